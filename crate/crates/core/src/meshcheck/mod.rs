//! Numerical checks of the disc-area inequality and of Plateau's angle rules
//! on triangulated foam surfaces.

mod angles;
mod clip;
pub mod fixtures;
mod io;

use std::collections::BTreeMap;

pub use angles::{plateau_angle_check, AngleReport, DEFAULT_ANGLE_TOL_DEG};
pub use clip::{clipped_area, ClippedArea, MAX_SUBDIVISION_DEPTH};
pub use io::{load_mesh, parse_json_mesh, parse_off, write_off};

use crate::bounds::{main_theorem_bound, MainBoundInput};
use crate::error::{Error, Result};
use crate::geometry::{DensityClass, Point3};
use crate::scalar::Real;
use crate::sum::pairwise_sum;

/// Triangulated foam surface: faces, Plateau borders (edges used by three
/// triangles) and their junctions.
#[derive(Clone, Debug, PartialEq)]
pub struct FoamMesh<T> {
    vertices: Vec<Point3<T>>,
    triangles: Vec<[usize; 3]>,
    patches: Option<Vec<usize>>,
}

pub(crate) fn triangle_area<T: Real>(a: Point3<T>, b: Point3<T>, c: Point3<T>) -> T {
    (b - a).cross(c - a).norm() * T::lit(0.5)
}

impl<T: Real> FoamMesh<T> {
    pub fn new(vertices: Vec<Point3<T>>, triangles: Vec<[usize; 3]>, patches: Option<Vec<usize>>) -> Result<Self> {
        if triangles.is_empty() {
            return Err(Error::Mesh("mesh has no triangles".into()));
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::Mesh(format!("vertex {i} has a non-finite coordinate")));
        }
        if let Some(p) = &patches {
            if p.len() != triangles.len() {
                return Err(Error::Mesh(format!(
                    "{} patch labels for {} triangles",
                    p.len(),
                    triangles.len()
                )));
            }
        }
        let mesh = FoamMesh {
            vertices,
            triangles,
            patches,
        };
        let scale = mesh.scale();
        let min_area = T::lit(1e-12) * scale * scale;
        for (k, t) in mesh.triangles.iter().enumerate() {
            if let Some(&bad) = t.iter().find(|&&i| i >= mesh.vertices.len()) {
                return Err(Error::Mesh(format!("triangle {k} references missing vertex {bad}")));
            }
            if mesh.area(k) <= min_area {
                return Err(Error::Mesh(format!("triangle {k} {t:?} is degenerate")));
            }
        }
        for ((a, b), tris) in mesh.edge_map() {
            if tris.len() > 3 {
                return Err(Error::Mesh(format!(
                    "edge ({a},{b}) is used by {} triangles; at most 3 faces meet along a border",
                    tris.len()
                )));
            }
        }
        Ok(mesh)
    }

    pub fn vertices(&self) -> &[Point3<T>] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn patches(&self) -> Option<&[usize]> {
        self.patches.as_deref()
    }

    pub fn corners(&self, k: usize) -> [Point3<T>; 3] {
        self.triangles[k].map(|i| self.vertices[i])
    }

    pub fn area(&self, k: usize) -> T {
        let [a, b, c] = self.corners(k);
        triangle_area(a, b, c)
    }

    pub fn total_area(&self) -> T {
        let areas: Vec<T> = (0..self.triangles.len()).map(|k| self.area(k)).collect();
        pairwise_sum(&areas)
    }

    /// Bounding-box diagonal.
    pub fn scale(&self) -> T {
        let mut lo = Point3::new(T::infinity(), T::infinity(), T::infinity());
        let mut hi = Point3::new(T::neg_infinity(), T::neg_infinity(), T::neg_infinity());
        for p in &self.vertices {
            lo = Point3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
            hi = Point3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
        }
        if self.vertices.is_empty() {
            T::zero()
        } else {
            (hi - lo).norm()
        }
    }

    /// Undirected edges (smaller index first) with the triangles using them.
    pub fn edge_map(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, t) in self.triangles.iter().enumerate() {
            for e in 0..3 {
                let (a, b) = (t[e], t[(e + 1) % 3]);
                map.entry((a.min(b), a.max(b))).or_default().push(k);
            }
        }
        map
    }

    /// Uniformly scaled copy.
    pub fn scaled(&self, f: T) -> Self {
        FoamMesh {
            vertices: self.vertices.iter().map(|&p| p * f).collect(),
            triangles: self.triangles.clone(),
            patches: self.patches.clone(),
        }
    }
}

/// Extrinsic disc `F ∩ B_R(o)` together with the density class and the
/// curvature bound assumed at `o`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscProbe<T> {
    pub center: Point3<T>,
    pub radius: T,
    pub class: DensityClass,
    pub h: T,
}

impl<T: Real> DiscProbe<T> {
    pub fn new(center: Point3<T>, radius: T, class: DensityClass, h: T) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::NonFinite("probe center".into()));
        }
        if !(radius > T::zero()) || !radius.is_finite() {
            return Err(Error::InvalidInput(format!("probe radius {radius} must be positive")));
        }
        if !(h >= T::zero()) || !h.is_finite() {
            return Err(Error::InvalidInput(format!(
                "curvature bound {h} must be finite and ≥ 0"
            )));
        }
        Ok(DiscProbe {
            center,
            radius,
            class,
            h,
        })
    }

    pub fn with_radius(self, radius: T) -> Result<Self> {
        Self::new(self.center, radius, self.class, self.h)
    }

    /// Closed-form lower bound for this disc.
    pub fn bound(&self) -> Result<T> {
        main_theorem_bound(MainBoundInput {
            theta: self.class.theta(),
            h: self.h,
            radius: self.radius,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MainInequalityReport<T> {
    /// Clipped-area estimate.
    pub measured: T,
    /// Certified error of `measured` from the subdivision.
    pub uncertainty: T,
    /// `measured − eps`: a certified lower estimate of the disc area.
    pub lhs: T,
    /// Closed-form lower bound.
    pub rhs: T,
    /// `lhs ≥ rhs`: the inequality holds with the full error budget removed.
    pub pass: bool,
    /// `measured + eps ≥ rhs`: the data does not contradict the inequality.
    /// Equality configurations (flat discs through the centre) are consistent
    /// but cannot strictly pass.
    pub consistent: bool,
    /// `measured / rhs`.
    pub ratio: T,
}

/// Compares the measured disc area with the closed-form bound.
pub fn verify_main_inequality<T: Real>(
    mesh: &FoamMesh<T>,
    probe: &DiscProbe<T>,
    eps: T,
) -> Result<MainInequalityReport<T>> {
    let clipped = clipped_area(mesh, probe, eps)?;
    let rhs = probe.bound()?;
    let lhs = clipped.value - eps;
    Ok(MainInequalityReport {
        measured: clipped.value,
        uncertainty: clipped.uncertainty,
        lhs,
        rhs,
        pass: lhs >= rhs,
        consistent: clipped.value + eps >= rhs,
        ratio: clipped.value / rhs,
    })
}

/// One row of a radius sweep: `(R, bound, measured)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveSample<T> {
    pub radius: T,
    pub bound: T,
    pub measured: T,
}

/// Measured disc area and bound for each radius in `radii`.
pub fn disc_area_curve<T: Real>(
    mesh: &FoamMesh<T>,
    probe: &DiscProbe<T>,
    radii: &[T],
    eps: T,
) -> Result<Vec<CurveSample<T>>> {
    radii
        .iter()
        .map(|&r| {
            let p = probe.with_radius(r)?;
            Ok(CurveSample {
                radius: r,
                bound: p.bound()?,
                measured: clipped_area(mesh, &p, eps)?.value,
            })
        })
        .collect()
}
