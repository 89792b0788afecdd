//! OFF and JSON mesh files.
//!
//! JSON layout: `{"vertices": [[x, y, z], …], "triangles": [[i, j, k], …],
//! "patches": [p, …]}` with `patches` optional.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use super::FoamMesh;
use crate::error::{Error, Result};
use crate::geometry::Point3;
use crate::scalar::Real;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Reads an OFF mesh. Faces with more than three corners are fan-triangulated;
/// `#` starts a comment.
pub fn parse_off<T: Real>(text: &str) -> Result<FoamMesh<T>> {
    let mut tokens = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        for tok in body.split_whitespace() {
            tokens.push((n + 1, tok));
        }
    }
    let mut it = tokens.into_iter().peekable();
    match it.next() {
        Some((_, "OFF")) => {}
        Some((line, tok)) => return Err(parse_err(line, format!("expected OFF header, found {tok:?}"))),
        None => return Err(parse_err(1, "empty file")),
    }
    let mut next_num = |what: &str| -> Result<(usize, &str)> {
        it.next()
            .ok_or_else(|| parse_err(0, format!("unexpected end of file while reading {what}")))
    };
    let mut count = |what: &str| -> Result<usize> {
        let (line, tok) = next_num(what)?;
        tok.parse().map_err(|_| parse_err(line, format!("bad {what} {tok:?}")))
    };
    let nv = count("vertex count")?;
    let nf = count("face count")?;
    let _ne = count("edge count")?;
    let mut vertices = Vec::with_capacity(nv);
    for i in 0..nv {
        let mut c = [T::zero(); 3];
        for slot in &mut c {
            let (line, tok) = next_num("vertex coordinate")?;
            let v: f64 = tok
                .parse()
                .map_err(|_| parse_err(line, format!("bad coordinate {tok:?} of vertex {i}")))?;
            *slot = T::lit(v);
        }
        vertices.push(Point3::new(c[0], c[1], c[2]));
    }
    let mut triangles = Vec::with_capacity(nf);
    for f in 0..nf {
        let (line, tok) = next_num("face size")?;
        let k: usize = tok
            .parse()
            .map_err(|_| parse_err(line, format!("bad size {tok:?} of face {f}")))?;
        if k < 3 {
            return Err(parse_err(line, format!("face {f} has {k} corners")));
        }
        let mut idx = Vec::with_capacity(k);
        for _ in 0..k {
            let (line, tok) = next_num("face index")?;
            idx.push(
                tok.parse::<usize>()
                    .map_err(|_| parse_err(line, format!("bad index {tok:?} in face {f}")))?,
            );
        }
        for j in 1..(k - 1) {
            triangles.push([idx[0], idx[j], idx[j + 1]]);
        }
    }
    FoamMesh::new(vertices, triangles, None)
}

#[derive(Deserialize)]
struct JsonMesh {
    vertices: Vec<[f64; 3]>,
    triangles: Vec<[usize; 3]>,
    #[serde(default)]
    patches: Option<Vec<usize>>,
}

pub fn parse_json_mesh<T: Real>(text: &str) -> Result<FoamMesh<T>> {
    let raw: JsonMesh = serde_json::from_str(text)?;
    let vertices = raw
        .vertices
        .iter()
        .map(|&[x, y, z]| Point3::new(T::lit(x), T::lit(y), T::lit(z)))
        .collect();
    FoamMesh::new(vertices, raw.triangles, raw.patches)
}

/// Loads a mesh, choosing the format by extension (`.json`, otherwise OFF).
pub fn load_mesh<T: Real>(path: impl AsRef<Path>) -> Result<FoamMesh<T>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some(e) if e.eq_ignore_ascii_case("json") => parse_json_mesh(&text),
        _ => parse_off(&text),
    }
}

pub fn write_off<T: Real>(mesh: &FoamMesh<T>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "OFF\n{} {} 0", mesh.vertices().len(), mesh.triangles().len());
    for p in mesh.vertices() {
        let _ = writeln!(
            s,
            "{} {} {}",
            p.x.to_f64_lossy(),
            p.y.to_f64_lossy(),
            p.z.to_f64_lossy()
        );
    }
    for [a, b, c] in mesh.triangles() {
        let _ = writeln!(s, "3 {a} {b} {c}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn off_roundtrip_and_fan() {
        let text = "OFF # square\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n";
        let m = parse_off::<f64>(text).unwrap();
        assert_eq!(m.triangles(), &[[0, 1, 2], [0, 2, 3]]);
        let back = parse_off::<f64>(&write_off(&m)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn off_errors_carry_lines() {
        let e = parse_off::<f64>("OFF\n3 1 0\n0 0 0\n1 x 0\n0 1 0\n3 0 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e}");
        assert!(parse_off::<f64>("PLY\n").is_err());
        assert!(parse_off::<f64>("OFF\n3 1 0\n0 0 0\n").is_err());
    }

    #[test]
    fn json_mesh() {
        let m = parse_json_mesh::<f64>(
            r#"{"vertices": [[0,0,0],[1,0,0],[0,1,0]], "triangles": [[0,1,2]], "patches": [7]}"#,
        )
        .unwrap();
        assert_eq!(m.patches(), Some(&[7usize][..]));
        assert!(parse_json_mesh::<f64>(r#"{"vertices": []}"#).is_err());
    }
}
