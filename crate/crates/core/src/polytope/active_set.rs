use super::linalg::solve;
use super::{finalize_vertices, DenseSystem, HPolytope, VertexSet};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Advances `idx` to the next `k`-combination of `0..m` in lexicographic order.
fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in (i + 1)..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Reference enumeration: every `N`-subset of rows is solved as an equality
/// system; nonsingular, feasible solutions are the vertices.
///
/// Cost grows as `C(m, N)`; intended for small instances and cross-checks.
pub fn enumerate_vertices_active_set<T: Real>(p: &HPolytope<T>, tol: T) -> Result<VertexSet<T>> {
    let dense = DenseSystem::from_polytope(p);
    let n = p.dim();
    let m = dense.a.len();
    if m < n {
        return Err(Error::Unbounded("fewer rows than radii".into()));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let mut cands = Vec::new();
    loop {
        let a: Vec<Vec<T>> = idx.iter().map(|&k| dense.a[k].clone()).collect();
        let b: Vec<T> = idx.iter().map(|&k| dense.b[k]).collect();
        if let Some(r) = solve(a, b, T::lit(1e-10).max(T::epsilon() * T::lit(64.0))) {
            if p.is_feasible(&r, T::feasibility_tol()) {
                cands.push(r);
            }
        }
        if !next_combination(&mut idx, m) {
            break;
        }
    }
    if cands.is_empty() {
        return Err(Error::Degenerate("no vertex found".into()));
    }
    Ok(VertexSet {
        vertices: finalize_vertices(cands, p.scale(), tol),
        dedup_tol: tol,
    })
}
