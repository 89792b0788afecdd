//! Plateau angle rules: three wings at 120° around every border, four
//! borders at the tetrahedral angle around every junction.

use std::collections::BTreeMap;

use super::FoamMesh;
use crate::error::Result;
use crate::geometry::Point3;
use crate::scalar::{tetrahedral_angle_deg, Real};

pub const DEFAULT_ANGLE_TOL_DEG: f64 = 1.0;

#[derive(Clone, Debug, PartialEq)]
pub struct AngleReport {
    pub triple_edges_checked: usize,
    pub junctions_checked: usize,
    /// Largest `|wing angle − 120°|` over all borders.
    pub max_edge_deviation_deg: f64,
    /// Largest `|border angle − arccos(−1/3)|` over all four-border junctions.
    pub max_vertex_deviation_deg: f64,
    pub max_deviation_deg: f64,
    pub worst_edge: Option<(usize, usize)>,
    pub worst_junction: Option<usize>,
    /// Every measured angle between border directions at junctions, degrees.
    pub junction_angles_deg: Vec<f64>,
    pub pass: bool,
    /// Elements skipped because their incidence was ambiguous.
    pub warnings: Vec<String>,
}

fn angle_deg<T: Real>(u: Point3<T>, v: Point3<T>) -> f64 {
    let c = u.dot(v).to_f64_lossy().clamp(-1.0, 1.0);
    c.acos().to_degrees()
}

/// Checks the angle rules on every border (edge used by three triangles) and
/// every junction (vertex where exactly four borders meet).
pub fn plateau_angle_check<T: Real>(mesh: &FoamMesh<T>, angle_tol_deg: f64) -> Result<AngleReport> {
    let verts = mesh.vertices();
    let tris = mesh.triangles();
    let tiny = T::lit(1e-12) * mesh.scale();
    let mut report = AngleReport {
        triple_edges_checked: 0,
        junctions_checked: 0,
        max_edge_deviation_deg: 0.0,
        max_vertex_deviation_deg: 0.0,
        max_deviation_deg: 0.0,
        worst_edge: None,
        worst_junction: None,
        junction_angles_deg: Vec::new(),
        pass: true,
        warnings: Vec::new(),
    };
    let mut borders_at: BTreeMap<usize, Vec<usize>> = BTreeMap::new();

    for ((a, b), owners) in mesh.edge_map() {
        if owners.len() != 3 {
            continue;
        }
        if let Some(patches) = mesh.patches() {
            let labels = [patches[owners[0]], patches[owners[1]], patches[owners[2]]];
            if labels[0] == labels[1] || labels[1] == labels[2] || labels[0] == labels[2] {
                report.warnings.push(format!(
                    "border ({a},{b}): wings do not come from three distinct patches"
                ));
                continue;
            }
        }
        let axis = verts[b] - verts[a];
        if axis.norm() <= tiny {
            report.warnings.push(format!("border ({a},{b}) has zero length"));
            continue;
        }
        let axis = axis.normalized();
        let mut wings = Vec::with_capacity(3);
        for &t in &owners {
            let third = tris[t]
                .iter()
                .copied()
                .find(|&i| i != a && i != b)
                .expect("triangle has a third corner");
            let off = verts[third] - verts[a];
            let w = off - axis * off.dot(axis);
            if w.norm() <= tiny {
                break;
            }
            wings.push(w.normalized());
        }
        if wings.len() != 3 {
            report
                .warnings
                .push(format!("border ({a},{b}) has a wing collinear with the border"));
            continue;
        }
        let dev = [(0, 1), (1, 2), (0, 2)]
            .iter()
            .map(|&(i, j)| (angle_deg(wings[i], wings[j]) - 120.0).abs())
            .fold(0.0, f64::max);
        report.triple_edges_checked += 1;
        if dev >= report.max_edge_deviation_deg {
            report.max_edge_deviation_deg = dev;
            report.worst_edge = Some((a, b));
        }
        borders_at.entry(a).or_default().push(b);
        borders_at.entry(b).or_default().push(a);
    }

    let target = tetrahedral_angle_deg();
    for (v, others) in borders_at {
        match others.len() {
            1 | 2 => continue,
            4 => {}
            k => {
                report
                    .warnings
                    .push(format!("vertex {v}: {k} borders meet (expected 2 or 4)"));
                continue;
            }
        }
        let dirs: Vec<Point3<T>> = others.iter().map(|&o| (verts[o] - verts[v]).normalized()).collect();
        let mut dev: f64 = 0.0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let ang = angle_deg(dirs[i], dirs[j]);
                report.junction_angles_deg.push(ang);
                dev = dev.max((ang - target).abs());
            }
        }
        report.junctions_checked += 1;
        if dev >= report.max_vertex_deviation_deg {
            report.max_vertex_deviation_deg = dev;
            report.worst_junction = Some(v);
        }
    }

    report.max_deviation_deg = report.max_edge_deviation_deg.max(report.max_vertex_deviation_deg);
    report.pass = report.max_deviation_deg <= angle_tol_deg;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures;
    use super::*;

    #[test]
    fn exact_triple_wedge() {
        let mesh = fixtures::triple_wedge::<f64>(120.0, 1.0, 4).unwrap();
        let r = plateau_angle_check(&mesh, 1.0).unwrap();
        assert_eq!(r.triple_edges_checked, 8);
        assert!(r.max_deviation_deg < 1e-9, "{r:?}");
        assert!(r.pass);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn skewed_triple_wedge() {
        let mesh = fixtures::triple_wedge::<f64>(118.0, 1.0, 4).unwrap();
        let r = plateau_angle_check(&mesh, 1.0).unwrap();
        assert!((r.max_deviation_deg - 2.0).abs() < 1e-9, "{r:?}");
        assert!(!r.pass);
        assert!(plateau_angle_check(&mesh, 2.5).unwrap().pass);
    }

    #[test]
    fn tetrahedral_cone_junction() {
        let mesh = fixtures::tetrahedral_cone::<f64>(1.0, 8).unwrap();
        let r = plateau_angle_check(&mesh, 1.0).unwrap();
        assert_eq!(r.junctions_checked, 1);
        assert_eq!(r.triple_edges_checked, 4);
        assert_eq!(r.junction_angles_deg.len(), 6);
        for a in &r.junction_angles_deg {
            assert!((a - 109.471_220_6).abs() < 1e-6);
        }
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn patch_labels_flag_ambiguous_borders() {
        let mesh = fixtures::triple_wedge::<f64>(120.0, 1.0, 2).unwrap();
        let same = vec![0; mesh.triangles().len()];
        let relabeled = FoamMesh::new(mesh.vertices().to_vec(), mesh.triangles().to_vec(), Some(same)).unwrap();
        let r = plateau_angle_check(&relabeled, 1.0).unwrap();
        assert_eq!(r.triple_edges_checked, 0);
        assert_eq!(r.warnings.len(), 4);
    }
}
