//! Synthetic foam meshes with known disc areas.
//!
//! * [`icosphere`]: a round bubble (`A = πR²` for `R ≤ 2ρ`, `4πρ²` beyond).
//! * [`cylinder`]: an open tube.
//! * [`flat_grid`]: a planar face.
//! * [`triple_wedge`]: three half-planes meeting along a border.
//! * [`tetrahedral_cone`]: six planar sectors over the regular tetrahedral frame.
//!
//! The last two are cones over their apex, so every disc about the apex that
//! stays inside the mesh has exactly `θ π R²` area.

use std::collections::HashMap;

use super::FoamMesh;
use crate::error::{Error, Result};
use crate::geometry::Point3;
use crate::scalar::Real;

fn pt<T: Real>(x: f64, y: f64, z: f64) -> Point3<T> {
    Point3::new(T::lit(x), T::lit(y), T::lit(z))
}

/// Geodesic sphere from `subdivisions` rounds of 1-to-4 splitting of an
/// icosahedron; `20 · 4^k` triangles.
pub fn icosphere<T: Real>(subdivisions: usize, radius: T) -> Result<FoamMesh<T>> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<Point3<f64>> = [
        (-1.0, phi, 0.0),
        (1.0, phi, 0.0),
        (-1.0, -phi, 0.0),
        (1.0, -phi, 0.0),
        (0.0, -1.0, phi),
        (0.0, 1.0, phi),
        (0.0, -1.0, -phi),
        (0.0, 1.0, -phi),
        (phi, 0.0, -1.0),
        (phi, 0.0, 1.0),
        (-phi, 0.0, -1.0),
        (-phi, 0.0, 1.0),
    ]
    .iter()
    .map(|&(x, y, z)| Point3::new(x, y, z).normalized())
    .collect();
    let mut tris: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..subdivisions {
        let mut cache: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, verts: &mut Vec<Point3<f64>>| -> usize {
            let key = (a.min(b), a.max(b));
            *cache.entry(key).or_insert_with(|| {
                verts.push(verts[a].midpoint(verts[b]).normalized());
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(tris.len() * 4);
        for [a, b, c] in tris {
            let ab = mid(a, b, &mut verts);
            let bc = mid(b, c, &mut verts);
            let ca = mid(c, a, &mut verts);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        tris = next;
    }
    let verts = verts.into_iter().map(|p| p.cast::<T>() * radius).collect();
    FoamMesh::new(verts, tris, None)
}

/// Open cylinder of the given radius around the z axis, `z ∈ [−half_height,
/// half_height]`.
pub fn cylinder<T: Real>(radius: T, half_height: T, around: usize, along: usize) -> Result<FoamMesh<T>> {
    if around < 3 || along < 1 {
        return Err(Error::InvalidInput(
            "cylinder needs ≥ 3 segments around and ≥ 1 along".into(),
        ));
    }
    let mut verts = Vec::with_capacity(around * (along + 1));
    for k in 0..=along {
        let z = -half_height + half_height * T::lit(2.0 * k as f64 / along as f64);
        for j in 0..around {
            let a = T::lit(2.0 * std::f64::consts::PI * j as f64 / around as f64);
            verts.push(Point3::new(radius * a.cos(), radius * a.sin(), z));
        }
    }
    let id = |k: usize, j: usize| k * around + (j % around);
    let mut tris = Vec::with_capacity(2 * around * along);
    for k in 0..along {
        for j in 0..around {
            tris.push([id(k, j), id(k, j + 1), id(k + 1, j + 1)]);
            tris.push([id(k, j), id(k + 1, j + 1), id(k + 1, j)]);
        }
    }
    FoamMesh::new(verts, tris, None)
}

/// Square `[−extent, extent]²` in the plane `z = 0`, split into `n × n` quads.
pub fn flat_grid<T: Real>(extent: T, n: usize) -> Result<FoamMesh<T>> {
    if n == 0 {
        return Err(Error::InvalidInput("grid needs at least one cell".into()));
    }
    let step = extent * T::lit(2.0 / n as f64);
    let mut verts = Vec::with_capacity((n + 1) * (n + 1));
    for i in 0..=n {
        for j in 0..=n {
            verts.push(Point3::new(
                -extent + step * T::lit(i as f64),
                -extent + step * T::lit(j as f64),
                T::zero(),
            ));
        }
    }
    let id = |i: usize, j: usize| i * (n + 1) + j;
    let mut tris = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            tris.push([id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            tris.push([id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    FoamMesh::new(verts, tris, None)
}

/// Three half-planes bounded by the z axis, at azimuths `0`, `second_deg` and
/// halfway around the remaining gap. `second_deg = 120` gives the Plateau
/// configuration. Each wing covers `z ∈ [−extent, extent]` and reaches
/// `extent` away from the axis; `n` segments per half-length. Triangles
/// carry their wing index as patch label.
pub fn triple_wedge<T: Real>(second_deg: f64, extent: T, n: usize) -> Result<FoamMesh<T>> {
    if n == 0 || !(0.0..360.0).contains(&second_deg) || second_deg == 0.0 {
        return Err(Error::InvalidInput(
            "triple wedge needs n ≥ 1 and an angle in (0, 360)".into(),
        ));
    }
    let azimuths = [0.0, second_deg, second_deg + (360.0 - second_deg) / 2.0];
    let h = extent * T::lit(1.0 / n as f64);
    let axis_len = 2 * n + 1;
    let mut verts: Vec<Point3<T>> = (0..axis_len)
        .map(|k| Point3::new(T::zero(), T::zero(), -extent + h * T::lit(k as f64)))
        .collect();
    let mut tris = Vec::new();
    let mut patches = Vec::new();
    for (w, &az) in azimuths.iter().enumerate() {
        let rad = az.to_radians();
        let u: Point3<T> = pt(rad.cos(), rad.sin(), 0.0);
        let base = verts.len();
        // radial column i ≥ 1, axial row k
        for i in 1..=n {
            for k in 0..axis_len {
                verts.push(verts[k] + u * (h * T::lit(i as f64)));
            }
        }
        let id = |k: usize, i: usize| if i == 0 { k } else { base + (i - 1) * axis_len + k };
        for i in 0..n {
            for k in 0..(axis_len - 1) {
                let (a, b, c, d) = (id(k, i), id(k + 1, i), id(k + 1, i + 1), id(k, i + 1));
                tris.push([a, b, c]);
                tris.push([a, c, d]);
                patches.extend([w, w]);
            }
        }
    }
    FoamMesh::new(verts, tris, Some(patches))
}

/// Six planar sectors spanned by pairs of the four tetrahedral directions,
/// meeting at the origin. Each sector has radius `extent` and is fanned into
/// `segments` triangles; the origin is the four-border junction.
pub fn tetrahedral_cone<T: Real>(extent: T, segments: usize) -> Result<FoamMesh<T>> {
    if segments == 0 {
        return Err(Error::InvalidInput("cone needs at least one segment per wing".into()));
    }
    let dirs: Vec<Point3<f64>> = [(1.0, 1.0, 1.0), (1.0, -1.0, -1.0), (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0)]
        .iter()
        .map(|&(x, y, z)| Point3::new(x, y, z).normalized())
        .collect();
    let alpha = (-1.0f64 / 3.0).acos();
    let mut verts: Vec<Point3<T>> = vec![Point3::origin()];
    verts.extend(dirs.iter().map(|d| d.cast::<T>() * extent));
    let mut tris = Vec::new();
    let mut patches = Vec::new();
    let mut wing = 0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            let mut rim = vec![1 + i];
            for s in 1..segments {
                let t = s as f64 / segments as f64;
                let u = (dirs[i] * ((1.0 - t) * alpha).sin() + dirs[j] * (t * alpha).sin()) * (1.0 / alpha.sin());
                verts.push(u.cast::<T>() * extent);
                rim.push(verts.len() - 1);
            }
            rim.push(1 + j);
            for w in rim.windows(2) {
                tris.push([0, w[0], w[1]]);
                patches.push(wing);
            }
            wing += 1;
        }
    }
    FoamMesh::new(verts, tris, Some(patches))
}

/// Inner radius of the rim polygon of a [`tetrahedral_cone`] sector: discs
/// about the apex up to this radius are exact planar sectors.
pub fn tetrahedral_cone_exact_radius(extent: f64, segments: usize) -> f64 {
    let alpha = (-1.0f64 / 3.0).acos();
    extent * (alpha / (2.0 * segments as f64)).cos()
}
