//! Area of a triangulated surface inside a closed ball, by adaptive midpoint
//! subdivision.

use rayon::prelude::*;

use super::{triangle_area, DiscProbe, FoamMesh};
use crate::error::{Error, Result};
use crate::geometry::Point3;
use crate::scalar::Real;
use crate::sum::pairwise_sum;

pub const MAX_SUBDIVISION_DEPTH: usize = 24;

/// Clipped area with its certified error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClippedArea<T> {
    pub value: T,
    /// Half the area left undecided when subdivision stopped; the true
    /// clipped area lies within `value ± uncertainty`.
    pub uncertainty: T,
}

/// Squared distance from `p` to the triangle `abc`.
pub(crate) fn point_triangle_dist2<T: Real>(p: Point3<T>, a: Point3<T>, b: Point3<T>, c: Point3<T>) -> T {
    let ab = b - a;
    let ac = c - a;
    let ap = p - a;
    let d1 = ab.dot(ap);
    let d2 = ac.dot(ap);
    if d1 <= T::zero() && d2 <= T::zero() {
        return ap.norm_squared();
    }
    let bp = p - b;
    let d3 = ab.dot(bp);
    let d4 = ac.dot(bp);
    if d3 >= T::zero() && d4 <= d3 {
        return bp.norm_squared();
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= T::zero() && d1 >= T::zero() && d3 <= T::zero() {
        let v = d1 / (d1 - d3);
        return (p - (a + ab * v)).norm_squared();
    }
    let cp = p - c;
    let d5 = ab.dot(cp);
    let d6 = ac.dot(cp);
    if d6 >= T::zero() && d5 <= d6 {
        return cp.norm_squared();
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= T::zero() && d2 >= T::zero() && d6 <= T::zero() {
        let w = d2 / (d2 - d6);
        return (p - (a + ac * w)).norm_squared();
    }
    let va = d3 * d6 - d5 * d4;
    if va <= T::zero() && (d4 - d3) >= T::zero() && (d5 - d6) >= T::zero() {
        let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return (p - (b + (c - b) * w)).norm_squared();
    }
    let denom = T::one() / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    (p - (a + ab * v + ac * w)).norm_squared()
}

enum Class {
    Inside,
    Outside,
    Straddling,
}

fn classify<T: Real>(t: &[Point3<T>; 3], c: Point3<T>, r2: T) -> Class {
    if t.iter().all(|&v| (v - c).norm_squared() <= r2) {
        return Class::Inside;
    }
    if point_triangle_dist2(c, t[0], t[1], t[2]) > r2 {
        return Class::Outside;
    }
    Class::Straddling
}

/// `(inside, undecided)` areas of one triangle.
fn clip_one<T: Real>(tri: [Point3<T>; 3], c: Point3<T>, r2: T, budget: T) -> (T, T) {
    let mut inside = T::zero();
    let mut level = vec![tri];
    let mut depth = 0;
    loop {
        let mut straddling = Vec::new();
        let mut undecided = T::zero();
        for t in level {
            match classify(&t, c, r2) {
                Class::Inside => inside += triangle_area(t[0], t[1], t[2]),
                Class::Outside => {}
                Class::Straddling => {
                    undecided += triangle_area(t[0], t[1], t[2]);
                    straddling.push(t);
                }
            }
        }
        if straddling.is_empty() || undecided < budget || depth == MAX_SUBDIVISION_DEPTH {
            return (inside, undecided);
        }
        level = Vec::with_capacity(straddling.len() * 4);
        for [a, b, cc] in straddling {
            let (ab, bc, ca) = (a.midpoint(b), b.midpoint(cc), cc.midpoint(a));
            level.push([a, ab, ca]);
            level.push([ab, b, bc]);
            level.push([ca, bc, cc]);
            level.push([ab, bc, ca]);
        }
        depth += 1;
    }
}

/// Area of `mesh ∩ B̄(probe.center, probe.radius)`.
///
/// Triangles entirely inside or outside the ball are settled at once. The
/// error budget `eps` is shared among the straddling triangles in proportion
/// to their area; each is split at edge midpoints until its undecided area
/// falls below its share (or the depth cap is reached, in which case the
/// residual widens the uncertainty). Straddling leaves count half their area.
/// Per-triangle results are combined with an index-ordered pairwise sum, so
/// the value does not depend on the number of worker threads.
pub fn clipped_area<T: Real>(mesh: &FoamMesh<T>, probe: &DiscProbe<T>, eps: T) -> Result<ClippedArea<T>> {
    if !(eps > T::zero()) || !eps.is_finite() {
        return Err(Error::InvalidInput(format!("area tolerance {eps} must be positive")));
    }
    let c = probe.center;
    let r2 = probe.radius * probe.radius;
    let classes: Vec<Class> = (0..mesh.triangles().len())
        .map(|k| classify(&mesh.corners(k), c, r2))
        .collect();
    let straddling: Vec<T> = classes
        .iter()
        .enumerate()
        .map(|(k, cl)| {
            if matches!(cl, Class::Straddling) {
                mesh.area(k)
            } else {
                T::zero()
            }
        })
        .collect();
    let straddling_total = pairwise_sum(&straddling);
    let parts: Vec<(T, T)> = classes
        .par_iter()
        .enumerate()
        .map(|(k, cl)| match cl {
            Class::Inside => (mesh.area(k), T::zero()),
            Class::Outside => (T::zero(), T::zero()),
            Class::Straddling => clip_one(mesh.corners(k), c, r2, eps * mesh.area(k) / straddling_total),
        })
        .collect();
    let half = T::lit(0.5);
    let values: Vec<T> = parts.iter().map(|&(i, u)| i + u * half).collect();
    let residual: Vec<T> = parts.iter().map(|&(_, u)| u * half).collect();
    Ok(ClippedArea {
        value: pairwise_sum(&values),
        uncertainty: pairwise_sum(&residual),
    })
}
