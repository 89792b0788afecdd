//! Double-description enumeration of the extreme rays of a pointed cone.
//!
//! The polytope `{y : A y ≤ 1}` (origin strictly inside) is homogenised to
//! the cone `{(y, t) : A y − t ≤ 0}`. Its extreme rays all have `t > 0` when
//! the polytope is bounded, and `y / t` runs over the polytope's vertices.
//! Rows are added one at a time; new rays are formed from adjacent pairs on
//! opposite sides of the incoming hyperplane, with adjacency decided by the
//! combinatorial test on tight-row sets.

use super::linalg::{dot, rank, solve};
use super::rowset::RowSet;
use crate::error::{Error, Result};
use crate::scalar::Real;

struct Ray<T> {
    z: Vec<T>,
    tight: RowSet,
}

fn normalize<T: Real>(z: &mut [T]) {
    let m = z.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    if m > T::zero() {
        for v in z.iter_mut() {
            *v = *v / m;
        }
    }
}

/// Vertices of `{y : rows · y ≤ 1}`. The region must be bounded and contain
/// the origin in its interior.
pub(crate) fn vertices_of_unit_system<T: Real>(rows: &[Vec<T>], tol: T) -> Result<Vec<Vec<T>>> {
    let n = rows.first().map(|r| r.len()).unwrap_or(0);
    let d = n + 1;
    let g: Vec<Vec<T>> = rows
        .iter()
        .map(|r| {
            let mut v: Vec<T> = r.iter().copied().chain(std::iter::once(-T::one())).collect();
            let norm = dot(&v, &v).sqrt();
            for x in v.iter_mut() {
                *x = *x / norm;
            }
            v
        })
        .collect();
    let m = g.len();

    // Greedy choice of d independent rows for the initial simplicial cone.
    let mut basis: Vec<usize> = Vec::with_capacity(d);
    let mut basis_rows: Vec<Vec<T>> = Vec::with_capacity(d);
    for (k, row) in g.iter().enumerate() {
        basis_rows.push(row.clone());
        if rank(&basis_rows, tol) == basis_rows.len() {
            basis.push(k);
            if basis.len() == d {
                break;
            }
        } else {
            basis_rows.pop();
        }
    }
    if basis.len() < d {
        return Err(Error::Unbounded("constraint rows do not span the radii space".into()));
    }

    let mut rays: Vec<Ray<T>> = Vec::with_capacity(d);
    for l in 0..d {
        let rhs: Vec<T> = (0..d).map(|i| if i == l { -T::one() } else { T::zero() }).collect();
        let mut z = solve(basis_rows.clone(), rhs, T::epsilon())
            .ok_or_else(|| Error::Degenerate("initial basis is singular".into()))?;
        normalize(&mut z);
        let mut tight = RowSet::empty(m);
        for (i, &k) in basis.iter().enumerate() {
            if i != l {
                tight.insert(k);
            }
        }
        rays.push(Ray { z, tight });
    }

    let mut in_basis = vec![false; m];
    for &k in &basis {
        in_basis[k] = true;
    }

    for k in (0..m).filter(|&k| !in_basis[k]) {
        let vals: Vec<T> = rays.iter().map(|r| dot(&g[k], &r.z)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > tol).collect();
        if plus.is_empty() {
            for (i, ray) in rays.iter_mut().enumerate() {
                if vals[i].abs() <= tol {
                    ray.tight.insert(k);
                }
            }
            continue;
        }
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < -tol).collect();

        let mut created: Vec<Ray<T>> = Vec::new();
        for &p in &plus {
            for &q in &minus {
                if rays[p].tight.intersection_len(&rays[q].tight) + 2 < d {
                    continue;
                }
                let common = rays[p].tight.intersection(&rays[q].tight);
                let adjacent = !rays
                    .iter()
                    .enumerate()
                    .any(|(r, ray)| r != p && r != q && common.is_subset(&ray.tight));
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (vals[p], vals[q]);
                let mut z: Vec<T> = rays[q]
                    .z
                    .iter()
                    .zip(&rays[p].z)
                    .map(|(&zq, &zp)| vp * zq - vq * zp)
                    .collect();
                normalize(&mut z);
                let mut tight = common;
                tight.insert(k);
                created.push(Ray { z, tight });
            }
        }

        let mut next: Vec<Ray<T>> = Vec::with_capacity(rays.len() - plus.len() + created.len());
        for (i, mut ray) in rays.into_iter().enumerate() {
            if vals[i] > tol {
                continue;
            }
            if vals[i].abs() <= tol {
                ray.tight.insert(k);
            }
            next.push(ray);
        }
        next.extend(created);
        rays = next;
    }

    let mut out = Vec::with_capacity(rays.len());
    for ray in rays {
        let t = ray.z[n];
        if t <= tol {
            return Err(Error::Unbounded("cone has a ray at infinity".into()));
        }
        out.push(ray.z[..n].iter().map(|&v| v / t).collect());
    }
    Ok(out)
}
