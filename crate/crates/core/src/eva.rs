//! Extrinsic vertex area: the best total disc-area bound obtainable from a
//! set of candidate vertices.
//!
//! For radii `r` in the admissible polytope the objective is
//! `Σ π θ_i e^{−2h r_i} r_i²`. `eva` is its maximum over the polytope and
//! `evA` the maximum of `eva` over all nonempty subsets of the points.
//! When the objective is convex on the polytope the maximum sits at a vertex;
//! otherwise a deterministic multi-start local ascent supplements the vertex
//! scan. Any feasible radii give a valid area lower bound, so the ascent can
//! only tighten the result.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{
    build_distance_matrix, reduce_distance_matrix, DistanceMatrix, Domain, PointSet, ReducedDistanceMatrix,
};
use crate::polytope::{build_h_polytope, enumerate_vertices, interior_point, Constraint, HPolytope};
use crate::scalar::{theta_vertex, Real};

/// Default size limit for the exhaustive subset search.
pub const DEFAULT_MAX_EXACT_N: usize = 8;

/// Number of starting points for the local ascent in the non-convex regime.
pub const ASCENT_SEEDS: usize = 32;

/// Relative width within which two objective values count as tied.
const TIE_RTOL: f64 = 1e-12;

/// Weighted disc-area objective.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaObjective<T> {
    h: T,
    weights: Vec<T>,
}

impl<T: Real> EvaObjective<T> {
    /// All points weighted with the vertex density `θ_v`.
    pub fn uniform(n: usize, h: T) -> Result<Self> {
        Self::with_weights(vec![theta_vertex(); n], h)
    }

    pub fn with_weights(weights: Vec<T>, h: T) -> Result<Self> {
        if !(h >= T::zero()) || !h.is_finite() {
            return Err(Error::InvalidInput(format!(
                "curvature bound h = {h} must be finite and ≥ 0"
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < T::zero()) {
            return Err(Error::InvalidInput("weights must be finite and ≥ 0".into()));
        }
        Ok(EvaObjective { h, weights })
    }

    pub fn for_points(points: &PointSet<T>, h: T) -> Result<Self> {
        Self::with_weights(points.thetas(), h)
    }

    pub fn h(&self) -> T {
        self.h
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Objective restricted to the points in `indices`.
    pub fn subset(&self, indices: &[usize]) -> Self {
        EvaObjective {
            h: self.h,
            weights: indices.iter().map(|&i| self.weights[i]).collect(),
        }
    }

    #[inline]
    fn term(&self, i: usize, r: T) -> T {
        T::PI() * self.weights[i] * (-(T::lit(2.0) * self.h * r)).exp() * r * r
    }

    fn value_unchecked(&self, r: &[T]) -> T {
        (0..r.len()).fold(T::zero(), |acc, i| acc + self.term(i, r[i]))
    }

    pub fn value(&self, r: &[T]) -> Result<T> {
        if r.len() != self.weights.len() {
            return Err(Error::ContractViolation(format!(
                "{} radii for {} weights",
                r.len(),
                self.weights.len()
            )));
        }
        if let Some(i) = r.iter().position(|&x| !(x >= T::zero()) || !x.is_finite()) {
            return Err(Error::ContractViolation(format!(
                "radius {i} = {} is not a nonnegative number",
                r[i]
            )));
        }
        Ok(self.value_unchecked(r))
    }
}

/// Objective value at `r`.
pub fn eva_value<T: Real>(r: &[T], obj: &EvaObjective<T>) -> Result<T> {
    obj.value(r)
}

/// Whether the objective is provably convex on the polytope of `d`.
///
/// Each term `e^{−2hr} r²` is convex exactly for `h r ≤ 1 − 1/√2`, and every
/// admissible radius is bounded by the entries of its row, so the test is
/// `d_ij ≤ (2 − √2) / (2h)` on all constraining entries.
pub fn convexity_certified<T: Real>(d: &ReducedDistanceMatrix<T>) -> bool {
    let h = d.h();
    if h == T::zero() {
        return true;
    }
    let threshold = (T::lit(2.0) - T::SQRT_2()) / (T::lit(2.0) * h);
    d.max_constraint() <= threshold
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvaResult<T> {
    pub value: T,
    pub radii: Vec<T>,
    /// Index into the sorted vertex list, or `None` when the local ascent
    /// found a better non-vertex point.
    pub attaining_vertex: Option<usize>,
    pub convexity_certified: bool,
    pub vertex_count: usize,
}

fn ties<T: Real>(a: T, b: T) -> bool {
    if !a.is_finite() || !b.is_finite() {
        return a == b;
    }
    (a - b).abs() <= T::lit(TIE_RTOL) * a.abs().max(b.abs())
}

/// Maximises the objective over the admissible-radii polytope of `d`.
pub fn maximize_eva<T: Real>(d: &ReducedDistanceMatrix<T>, obj: &EvaObjective<T>) -> Result<EvaResult<T>> {
    if obj.len() != d.num_points() {
        return Err(Error::ContractViolation(format!(
            "objective has {} weights for {} points",
            obj.len(),
            d.num_points()
        )));
    }
    if obj.h() != d.h() {
        return Err(Error::ContractViolation("objective and matrix disagree on h".into()));
    }
    let poly = build_h_polytope(d)?;
    let vertices = enumerate_vertices(&poly, T::dedup_tol())?;

    // Vertices are sorted lexicographically, so the first maximiser wins ties.
    let mut best_idx = 0;
    let mut best_val = T::neg_infinity();
    for (k, v) in vertices.iter().enumerate() {
        let val = obj.value_unchecked(v);
        if val > best_val && !ties(val, best_val) {
            best_idx = k;
            best_val = val;
        }
    }
    let certified = convexity_certified(d);
    let mut result = EvaResult {
        value: best_val,
        radii: vertices.vertices[best_idx].clone(),
        attaining_vertex: Some(best_idx),
        convexity_certified: certified,
        vertex_count: vertices.len(),
    };
    if !certified {
        let (radii, value) = multi_start_ascent(&poly, obj, &result.radii);
        if value > result.value && !ties(value, result.value) {
            result.value = value;
            result.radii = radii;
            result.attaining_vertex = None;
        }
    }
    Ok(result)
}

/// Largest `t ≥ 0` with `r + t·dir` feasible.
fn max_step<T: Real>(p: &HPolytope<T>, slacks: &[T], dir: &[T]) -> T {
    let mut t = T::infinity();
    for (k, &s) in slacks.iter().enumerate() {
        let rate = p.row_value(k, dir);
        if rate > T::zero() {
            t = t.min(s.max(T::zero()) / rate);
        }
    }
    t
}

/// Rows of `p` grouped by the coordinates they touch, with their
/// coefficients.
struct Incidence<T> {
    rows: Vec<Constraint>,
    by_coord: Vec<Vec<(usize, T)>>,
}

impl<T: Real> Incidence<T> {
    fn new(p: &HPolytope<T>) -> Self {
        let n = p.dim();
        let mut by_coord = vec![Vec::new(); n];
        for (k, c) in p.constraints().iter().enumerate() {
            for (i, list) in by_coord.iter_mut().enumerate() {
                let a = c.coefficient(i);
                if a != 0 {
                    list.push((k, T::lit(a as f64)));
                }
            }
        }
        Incidence {
            rows: p.constraints().to_vec(),
            by_coord,
        }
    }

    fn coef(&self, k: usize, i: usize) -> T {
        T::lit(self.rows[k].coefficient(i) as f64)
    }

    /// Largest `t ≥ 0` along `e_i` (or `e_i − e_j`) that keeps every slack
    /// nonnegative.
    fn max_step(&self, slacks: &[T], i: usize, j: Option<usize>) -> T {
        let mut t = T::infinity();
        for &(k, a) in &self.by_coord[i] {
            let rate = a - j.map_or(T::zero(), |j| self.coef(k, j));
            if rate > T::zero() {
                t = t.min(slacks[k].max(T::zero()) / rate);
            }
        }
        if let Some(j) = j {
            for &(k, a) in &self.by_coord[j] {
                if self.coef(k, i) != T::zero() {
                    continue;
                }
                let rate = -a;
                if rate > T::zero() {
                    t = t.min(slacks[k].max(T::zero()) / rate);
                }
            }
        }
        t
    }

    fn shift(&self, slacks: &mut [T], i: usize, delta: T) {
        for &(k, a) in &self.by_coord[i] {
            slacks[k] -= a * delta;
        }
    }
}

/// Compass search over increase moves `+e_i` and transfer moves `e_i − e_j`,
/// always clipped to the polytope.
fn local_ascent<T: Real>(p: &HPolytope<T>, inc: &Incidence<T>, obj: &EvaObjective<T>, start: Vec<T>) -> (Vec<T>, T) {
    let n = p.dim();
    let scale = p.scale();
    let mut r = start;
    let mut slacks = p.slacks(&r);
    let mut dirs: Vec<(usize, Option<usize>)> = (0..n).map(|i| (i, None)).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                dirs.push((i, Some(j)));
            }
        }
    }
    let mut step = scale * T::lit(0.25);
    let floor = scale * T::lit(1e-10);
    let mut value = obj.value_unchecked(&r);
    while step > floor {
        let mut improved = false;
        for _sweep in 0..64 {
            let mut any = false;
            for &(i, j) in &dirs {
                let t = inc.max_step(&slacks, i, j).min(step);
                if !(t > T::zero()) {
                    continue;
                }
                let ri = r[i] + t;
                let mut delta = obj.term(i, ri) - obj.term(i, r[i]);
                let mut moved_j = None;
                if let Some(j) = j {
                    let rj = (r[j] - t).max(T::zero());
                    delta += obj.term(j, rj) - obj.term(j, r[j]);
                    moved_j = Some((j, rj));
                }
                if delta > T::lit(1e-15) * value.max(T::min_positive_value()) {
                    inc.shift(&mut slacks, i, ri - r[i]);
                    r[i] = ri;
                    if let Some((j, rj)) = moved_j {
                        inc.shift(&mut slacks, j, rj - r[j]);
                        r[j] = rj;
                    }
                    value += delta;
                    any = true;
                    improved = true;
                }
            }
            if !any {
                break;
            }
        }
        if !improved {
            step *= T::lit(0.5);
        }
    }
    let value = obj.value_unchecked(&r);
    (r, value)
}

/// Deterministic starting points: the best vertex, the interior point, and
/// pseudo-random points scaled toward the boundary.
fn ascent_seeds<T: Real>(p: &HPolytope<T>, best_vertex: &[T]) -> Vec<Vec<T>> {
    let n = p.dim();
    let mut seeds = vec![best_vertex.to_vec()];
    if let Ok(x) = interior_point(p) {
        seeds.push(x);
    }
    let zero = vec![T::zero(); n];
    let base = p.slacks(&zero);
    let mut k = 0u64;
    while seeds.len() < ASCENT_SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + k);
        k += 1;
        let u: Vec<T> = (0..n).map(|_| T::lit(rng.gen::<f64>())).collect();
        let reach = max_step(p, &base, &u);
        if !reach.is_finite() || reach <= T::zero() {
            continue;
        }
        let frac = T::lit(rng.gen_range(0.5..1.0));
        seeds.push(u.iter().map(|&x| x * reach * frac).collect());
    }
    seeds
}

fn multi_start_ascent<T: Real>(p: &HPolytope<T>, obj: &EvaObjective<T>, best_vertex: &[T]) -> (Vec<T>, T) {
    let mut best: Option<(Vec<T>, T)> = None;
    let inc = Incidence::new(p);
    for seed in ascent_seeds(p, best_vertex) {
        let (r, v) = local_ascent(p, &inc, obj, seed);
        let better = match &best {
            None => true,
            Some((br, bv)) => {
                (v > *bv && !ties(v, *bv)) || (ties(v, *bv) && r.partial_cmp(br) == Some(std::cmp::Ordering::Less))
            }
        };
        if better {
            best = Some((r, v));
        }
    }
    best.expect("at least one seed")
}

/// `eva` of a point configuration in a domain.
pub fn eva<T: Real>(points: &PointSet<T>, domain: &Domain<T>, h: T) -> Result<EvaResult<T>> {
    let d = reduce_distance_matrix(&build_distance_matrix(points, domain)?, h)?;
    maximize_eva(&d, &EvaObjective::for_points(points, h)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvaAMethod {
    Exact,
    Algorithm1,
}

impl EvaAMethod {
    pub fn name(self) -> &'static str {
        match self {
            EvaAMethod::Exact => "exact",
            EvaAMethod::Algorithm1 => "algorithm1",
        }
    }
}

/// One pass of the greedy removal loop.
#[derive(Clone, Debug, PartialEq)]
pub struct GreedyStep<T> {
    pub survivors: Vec<usize>,
    pub value: T,
    pub removed: Vec<usize>,
    /// Several radii shared the minimum and the lowest index was removed.
    pub tie_broken: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvaAResult<T> {
    pub value: T,
    /// Indices into the original point set, increasing.
    pub subset: Vec<usize>,
    /// Radii of the points in `subset`, in the same order.
    pub radii: Vec<T>,
    pub method: EvaAMethod,
    /// `eva` of the full point set.
    pub full_set_eva: T,
    pub trace: Vec<GreedyStep<T>>,
}

fn subset_eva<T: Real>(d: &DistanceMatrix<T>, obj: &EvaObjective<T>, indices: &[usize]) -> Result<EvaResult<T>> {
    let red = reduce_distance_matrix(&d.subset(indices)?, obj.h())?;
    maximize_eva(&red, &obj.subset(indices))
}

fn mask_indices(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Exhaustive `evA` from a full distance matrix: every nonempty subset is
/// scored. Ties go to the smaller subset, then the lexicographically smaller.
pub fn eva_a_exact_matrix<T: Real>(
    d: &DistanceMatrix<T>,
    obj: &EvaObjective<T>,
    max_n: usize,
) -> Result<EvaAResult<T>> {
    let n = d.num_points();
    if n > max_n || n >= 63 {
        return Err(Error::SizeLimit { n, max: max_n });
    }
    if obj.len() != n {
        return Err(Error::ContractViolation(format!(
            "objective has {} weights for {n} points",
            obj.len()
        )));
    }
    let full_mask: u64 = (1u64 << n) - 1;
    let scored: Vec<Result<(Vec<usize>, EvaResult<T>)>> = (1..=full_mask)
        .into_par_iter()
        .map(|mask| {
            let idx = mask_indices(mask, n);
            subset_eva(d, obj, &idx).map(|r| (idx, r))
        })
        .collect();

    let mut best: Option<(Vec<usize>, EvaResult<T>)> = None;
    let mut full_set_eva = T::zero();
    for item in scored {
        let (idx, res) = item?;
        if idx.len() == n {
            full_set_eva = res.value;
        }
        let replace = match &best {
            None => true,
            Some((bi, br)) => {
                if ties(res.value, br.value) {
                    (idx.len(), &idx) < (bi.len(), bi)
                } else {
                    res.value > br.value
                }
            }
        };
        if replace {
            best = Some((idx, res));
        }
    }
    let (subset, res) = best.expect("at least one subset");
    Ok(EvaAResult {
        value: res.value,
        subset,
        radii: res.radii,
        method: EvaAMethod::Exact,
        full_set_eva,
        trace: Vec::new(),
    })
}

/// Greedy `evA`: score the current set, drop collapsed (zero) radii or else
/// the smallest one, and stop once the score falls below the best seen.
pub fn eva_a_algorithm1_matrix<T: Real>(d: &DistanceMatrix<T>, obj: &EvaObjective<T>) -> Result<EvaAResult<T>> {
    let n = d.num_points();
    if obj.len() != n {
        return Err(Error::ContractViolation(format!(
            "objective has {} weights for {n} points",
            obj.len()
        )));
    }
    let mut survivors: Vec<usize> = (0..n).collect();
    let mut best: Option<(T, Vec<usize>, Vec<T>)> = None;
    let mut trace = Vec::new();
    let mut full_set_eva = T::zero();

    while !survivors.is_empty() {
        let res = subset_eva(d, obj, &survivors)?;
        if survivors.len() == n {
            full_set_eva = res.value;
        }
        if let Some((bv, _, _)) = &best {
            if *bv > res.value && !ties(*bv, res.value) {
                trace.push(GreedyStep {
                    survivors: survivors.clone(),
                    value: res.value,
                    removed: vec![],
                    tie_broken: false,
                });
                break;
            }
        }
        best = Some((res.value, survivors.clone(), res.radii.clone()));

        let scale = survivors
            .iter()
            .flat_map(|&i| survivors.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| i != j)
            .fold(T::one(), |m, (i, j)| m.max(d.get(i, j).min(d.boundary(i))));
        let zero_tol = T::dedup_tol() * scale;
        let collapsed: Vec<usize> = (0..survivors.len()).filter(|&k| res.radii[k] <= zero_tol).collect();
        let (remove, tie_broken) = if !collapsed.is_empty() {
            (collapsed, false)
        } else {
            let min = res.radii.iter().copied().fold(T::infinity(), T::min);
            let at_min: Vec<usize> = (0..survivors.len()).filter(|&k| res.radii[k] == min).collect();
            (vec![at_min[0]], at_min.len() > 1)
        };
        let removed: Vec<usize> = remove.iter().map(|&k| survivors[k]).collect();
        trace.push(GreedyStep {
            survivors: survivors.clone(),
            value: res.value,
            removed: removed.clone(),
            tie_broken,
        });
        survivors.retain(|i| !removed.contains(i));
    }

    let (value, subset, radii) = best.expect("nonempty point set");
    Ok(EvaAResult {
        value,
        subset,
        radii,
        method: EvaAMethod::Algorithm1,
        full_set_eva,
        trace,
    })
}

/// Exhaustive `evA` of a point configuration.
pub fn eva_a_exact<T: Real>(points: &PointSet<T>, domain: &Domain<T>, h: T, max_n: usize) -> Result<EvaAResult<T>> {
    if points.len() > max_n {
        return Err(Error::SizeLimit {
            n: points.len(),
            max: max_n,
        });
    }
    let d = build_distance_matrix(points, domain)?;
    eva_a_exact_matrix(&d, &EvaObjective::for_points(points, h)?, max_n)
}

/// Greedy `evA` of a point configuration.
pub fn eva_a_algorithm1<T: Real>(points: &PointSet<T>, domain: &Domain<T>, h: T) -> Result<EvaAResult<T>> {
    let d = build_distance_matrix(points, domain)?;
    eva_a_algorithm1_matrix(&d, &EvaObjective::for_points(points, h)?)
}
