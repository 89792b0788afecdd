//! The admissible-radii polytope and the enumeration of its vertices.
//!
//! Radii `r ∈ ℝᴺ` are admissible when the balls `B(x_i, r_i)` are pairwise
//! disjoint, stay inside the domain and respect the cap `r_i ≤ 1/h`. Using the
//! reduced distance matrix this is the H-representation
//!
//! ```text
//!   r_i + r_j ≤ d_ij   (i < j)
//!        −r_i ≤ 0
//!         r_i ≤ r_max  (when h > 0)
//! ```
//!
//! Two enumeration routes are provided. [`enumerate_vertices`] shifts the
//! polytope to a strictly interior point, rescales each row by its slack so
//! every right-hand side becomes 1, and runs a double-description pass over
//! the homogenised cone. [`enumerate_vertices_active_set`] is the slow
//! reference: every `N`-subset of rows is solved and kept when feasible.

mod active_set;
mod dd;
pub(crate) mod linalg;
mod rowset;

use crate::error::{Error, Result};
use crate::geometry::ReducedDistanceMatrix;
use crate::scalar::Real;

pub use active_set::enumerate_vertices_active_set;

/// Origin of a constraint row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// `r_i + r_j ≤ d_ij`: the balls around points `i` and `j` are disjoint.
    Pair(usize, usize),
    /// `−r_i ≤ 0`.
    NonNeg(usize),
    /// `r_i ≤ bound`: the curvature cap, or the whole interval when `N = 1`.
    Cap(usize),
}

impl Constraint {
    pub fn coefficient(&self, col: usize) -> i8 {
        match *self {
            Constraint::Pair(i, j) if col == i || col == j => 1,
            Constraint::NonNeg(i) if col == i => -1,
            Constraint::Cap(i) if col == i => 1,
            _ => 0,
        }
    }

    pub fn tag(&self) -> String {
        match *self {
            Constraint::Pair(i, j) => format!("pair({i},{j})"),
            Constraint::NonNeg(i) => format!("nonnegativity({i})"),
            Constraint::Cap(i) => format!("cap({i})"),
        }
    }
}

/// `{r : M·r ≤ b}` with one tagged constraint per row.
#[derive(Clone, Debug, PartialEq)]
pub struct HPolytope<T> {
    dim: usize,
    rows: Vec<Constraint>,
    rhs: Vec<T>,
}

impl<T: Real> HPolytope<T> {
    /// Assembles a polytope from tagged rows. Right-hand sides must be finite
    /// and nonnegative (the origin is always feasible).
    pub fn new(dim: usize, rows: Vec<Constraint>, rhs: Vec<T>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("polytope dimension must be positive".into()));
        }
        if rows.len() != rhs.len() {
            return Err(Error::InvalidInput("one right-hand side per row required".into()));
        }
        for (row, b) in rows.iter().zip(&rhs) {
            let in_range = match *row {
                Constraint::Pair(i, j) => i < j && j < dim,
                Constraint::NonNeg(i) | Constraint::Cap(i) => i < dim,
            };
            if !in_range {
                return Err(Error::InvalidInput(format!("row {} out of range", row.tag())));
            }
            if !b.is_finite() || *b < T::zero() {
                return Err(Error::InvalidInput(format!("row {} has bound {b}", row.tag())));
            }
        }
        let p = HPolytope { dim, rows, rhs };
        p.check_bounded()?;
        Ok(p)
    }

    fn check_bounded(&self) -> Result<()> {
        let mut lower = vec![false; self.dim];
        let mut upper = vec![false; self.dim];
        for row in &self.rows {
            match *row {
                Constraint::Pair(i, j) => {
                    upper[i] = true;
                    upper[j] = true;
                }
                Constraint::NonNeg(i) => lower[i] = true,
                Constraint::Cap(i) => upper[i] = true,
            }
        }
        if let Some(i) = (0..self.dim).find(|&i| !lower[i] || !upper[i]) {
            return Err(Error::Unbounded(format!("radius {i} is not constrained on both sides")));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.rows
    }

    pub fn rhs(&self) -> &[T] {
        &self.rhs
    }

    /// Dense `M` with entries in `{−1, 0, 1}`.
    pub fn matrix(&self) -> Vec<Vec<T>> {
        self.rows
            .iter()
            .map(|c| (0..self.dim).map(|k| T::lit(c.coefficient(k) as f64)).collect())
            .collect()
    }

    /// `M_k · r`.
    pub fn row_value(&self, k: usize, r: &[T]) -> T {
        match self.rows[k] {
            Constraint::Pair(i, j) => r[i] + r[j],
            Constraint::NonNeg(i) => -r[i],
            Constraint::Cap(i) => r[i],
        }
    }

    /// Slacks `b − M·r`.
    pub fn slacks(&self, r: &[T]) -> Vec<T> {
        (0..self.rows.len())
            .map(|k| self.rhs[k] - self.row_value(k, r))
            .collect()
    }

    /// `‖b‖∞`, floored at 1 so tolerances stay meaningful for tiny instances.
    pub fn scale(&self) -> T {
        self.rhs.iter().fold(T::one(), |m, &b| m.max(b))
    }

    pub fn is_feasible(&self, r: &[T], tol: T) -> bool {
        let slack_tol = tol * self.scale();
        r.len() == self.dim && self.slacks(r).iter().all(|&s| s >= -slack_tol)
    }

    /// Rank of the rows active at `r` (slack within `tol · ‖b‖∞`).
    pub fn active_rank(&self, r: &[T], tol: T) -> usize {
        let slack_tol = tol * self.scale();
        let m = self.matrix();
        let active: Vec<Vec<T>> = self
            .slacks(r)
            .iter()
            .zip(m)
            .filter(|(s, _)| s.abs() <= slack_tol)
            .map(|(_, row)| row)
            .collect();
        linalg::rank(&active, T::lit(1e-9))
    }
}

/// Builds the H-representation of the admissible radii.
pub fn build_h_polytope<T: Real>(d: &ReducedDistanceMatrix<T>) -> Result<HPolytope<T>> {
    let n = d.num_points();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    if n == 1 {
        rows.push(Constraint::Cap(0));
        rhs.push(d.get(0, 0));
        rows.push(Constraint::NonNeg(0));
        rhs.push(T::zero());
        return HPolytope::new(1, rows, rhs);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let v = d.get(i, j);
            if v.is_finite() {
                rows.push(Constraint::Pair(i, j));
                rhs.push(v);
            }
        }
    }
    for i in 0..n {
        rows.push(Constraint::NonNeg(i));
        rhs.push(T::zero());
    }
    if let Some(cap) = d.r_max() {
        for i in 0..n {
            rows.push(Constraint::Cap(i));
            rhs.push(cap);
        }
    }
    HPolytope::new(n, rows, rhs)
}

/// Strictly feasible point of a full-dimensional polytope.
///
/// Each radius is set to `min b_k / (1 + |row k|)` over the rows bounding it
/// from above, so every upper row keeps at least a third of its bound as
/// slack and every radius stays positive. Intervals get their midpoint.
pub fn interior_point<T: Real>(p: &HPolytope<T>) -> Result<Vec<T>> {
    let dense = DenseSystem::from_polytope(p);
    dense
        .interior_point()
        .ok_or_else(|| Error::Degenerate("no strictly feasible point: some radius is forced to zero".into()))
}

/// Enumerated extreme points, sorted lexicographically.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexSet<T> {
    pub vertices: Vec<Vec<T>>,
    /// Relative tolerance under which near-identical vertices were merged.
    pub dedup_tol: T,
}

impl<T: Real> VertexSet<T> {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<T>> {
        self.vertices.iter()
    }

    /// Whether `r` matches a listed vertex within `tol · scale` (max norm).
    pub fn contains(&self, r: &[T], tol: T, scale: T) -> bool {
        self.vertices.iter().any(|v| max_abs_diff(v, r) <= tol * scale)
    }
}

fn max_abs_diff<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |m, (&x, &y)| m.max((x - y).abs()))
}

/// Snaps near-zero coordinates, merges near-duplicates and sorts.
pub(crate) fn finalize_vertices<T: Real>(cands: Vec<Vec<T>>, scale: T, tol: T) -> Vec<Vec<T>> {
    let eps = tol * scale;
    let mut kept: Vec<Vec<T>> = Vec::with_capacity(cands.len());
    for mut v in cands {
        for x in v.iter_mut() {
            if x.abs() <= eps {
                *x = T::zero();
            }
        }
        if !kept.iter().any(|k| max_abs_diff(k, &v) <= eps) {
            kept.push(v);
        }
    }
    kept.sort_by(|a, b| a.partial_cmp(b).expect("finite vertex coordinates"));
    kept
}

/// Complete vertex set of `p` via the interior-shift / slack-normalisation
/// transform and double description. `tol` is the dedup tolerance relative
/// to `‖b‖∞`.
pub fn enumerate_vertices<T: Real>(p: &HPolytope<T>, tol: T) -> Result<VertexSet<T>> {
    let dense = DenseSystem::from_polytope(p);
    let scale = p.scale();
    let feas = T::feasibility_tol();

    // Rows with a zero bound and nonnegative coefficients pin their radii to 0.
    let mut forced = vec![false; p.dim];
    for (row, &b) in dense.a.iter().zip(&dense.b) {
        if b <= feas * scale && row.iter().all(|&c| c >= T::zero()) {
            for (k, &c) in row.iter().enumerate() {
                if c > T::zero() {
                    forced[k] = true;
                }
            }
        }
    }
    let free: Vec<usize> = (0..p.dim).filter(|&k| !forced[k]).collect();
    if free.is_empty() {
        return Ok(VertexSet {
            vertices: vec![vec![T::zero(); p.dim]],
            dedup_tol: tol,
        });
    }
    let sub = dense.restrict(&free);
    let x0 = sub
        .interior_point()
        .ok_or_else(|| Error::Degenerate("reduced polytope has empty interior".into()))?;

    let normalized: Vec<Vec<T>> = sub
        .a
        .iter()
        .zip(&sub.b)
        .map(|(row, &b)| {
            let slack = b - linalg::dot(row, &x0);
            row.iter().map(|&c| c / slack).collect()
        })
        .collect();

    let shifted = if free.len() == 1 {
        // interval: the two extreme rows give the endpoints directly
        let lo = normalized
            .iter()
            .filter(|r| r[0] < T::zero())
            .map(|r| T::one() / r[0])
            .fold(T::neg_infinity(), T::max);
        let hi = normalized
            .iter()
            .filter(|r| r[0] > T::zero())
            .map(|r| T::one() / r[0])
            .fold(T::infinity(), T::min);
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Unbounded("interval is unbounded".into()));
        }
        vec![vec![lo], vec![hi]]
    } else {
        dd::vertices_of_unit_system(&normalized, feas)?
    };

    let cands = shifted
        .into_iter()
        .map(|y| {
            let mut r = vec![T::zero(); p.dim];
            for (slot, &k) in free.iter().enumerate() {
                r[k] = y[slot] + x0[slot];
            }
            r
        })
        .map(|r| polish_vertex(&dense, r, scale, tol))
        .filter(|r| p.is_feasible(r, tol))
        .collect();
    Ok(VertexSet {
        vertices: finalize_vertices(cands, scale, tol),
        dedup_tol: tol,
    })
}

/// Re-solves the tight rows of an approximate vertex, tightest first, to
/// remove the rounding picked up in the transformed coordinates.
fn polish_vertex<T: Real>(sys: &DenseSystem<T>, r: Vec<T>, scale: T, tol: T) -> Vec<T> {
    let n = r.len();
    let mut tight: Vec<(T, usize)> = sys
        .a
        .iter()
        .zip(&sys.b)
        .enumerate()
        .map(|(k, (row, &b))| ((b - linalg::dot(row, &r)).abs(), k))
        .filter(|&(s, _)| s <= tol * scale)
        .collect();
    tight.sort_by(|x, y| x.partial_cmp(y).expect("finite slack"));
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(n);
    for (_, k) in tight {
        rows.push(sys.a[k].clone());
        if linalg::rank(&rows, T::feasibility_tol()) == rows.len() {
            chosen.push(k);
            if chosen.len() == n {
                break;
            }
        } else {
            rows.pop();
        }
    }
    if chosen.len() < n {
        return r;
    }
    let b = chosen.iter().map(|&k| sys.b[k]).collect();
    match linalg::solve(rows, b, T::feasibility_tol()) {
        Some(x) if max_abs_diff(&x, &r) <= tol * scale => x,
        _ => r,
    }
}

/// Dense copy of a constraint system, used by both enumeration routes.
#[derive(Clone, Debug)]
pub(crate) struct DenseSystem<T> {
    pub(crate) a: Vec<Vec<T>>,
    pub(crate) b: Vec<T>,
}

impl<T: Real> DenseSystem<T> {
    pub(crate) fn from_polytope(p: &HPolytope<T>) -> Self {
        DenseSystem {
            a: p.matrix(),
            b: p.rhs.clone(),
        }
    }

    /// Restriction to the columns in `keep` (other coordinates fixed at 0).
    /// Rows left without any nonzero coefficient are dropped.
    fn restrict(&self, keep: &[usize]) -> Self {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (row, &rhs) in self.a.iter().zip(&self.b) {
            let r: Vec<T> = keep.iter().map(|&k| row[k]).collect();
            if r.iter().any(|&c| c != T::zero()) {
                a.push(r);
                b.push(rhs);
            }
        }
        DenseSystem { a, b }
    }

    fn interior_point(&self) -> Option<Vec<T>> {
        let n = self.a.first()?.len();
        let mut x = vec![T::infinity(); n];
        for (row, &rhs) in self.a.iter().zip(&self.b) {
            let support = row.iter().filter(|&&c| c != T::zero()).count();
            if row.iter().any(|&c| c < T::zero()) {
                continue;
            }
            let share = rhs / T::lit((1 + support) as f64);
            for (k, &c) in row.iter().enumerate() {
                if c > T::zero() {
                    x[k] = x[k].min(share / c);
                }
            }
        }
        if x.iter().any(|v| !v.is_finite() || *v <= T::zero()) {
            return None;
        }
        let strictly = self.a.iter().zip(&self.b).all(|(row, &rhs)| linalg::dot(row, &x) < rhs);
        strictly.then_some(x)
    }
}
