//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use foambound::geometry::{Point3, PointSet};
use foambound::{Domain, ReducedDistanceMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform point in the ball of radius `radius` about the origin.
pub fn point_in_ball(rng: &mut ChaCha8Rng, radius: f64) -> Point3<f64> {
    loop {
        let p = Point3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if p.norm() < 1.0 {
            return p * radius;
        }
    }
}

/// `n` random points in a ball domain, rejecting pairs closer than 1e-3.
pub fn random_instance(seed: u64, n: usize, radius: f64) -> (PointSet<f64>, Domain) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point3<f64>> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = point_in_ball(&mut rng, radius);
        if pts.iter().all(|q| q.distance(p) > 1e-3 * radius) {
            pts.push(p);
        }
    }
    let domain = Domain::ball(Point3::origin(), radius).unwrap();
    (PointSet::new(pts).unwrap(), domain)
}

/// Constraint rows `(a, b)` of the radii polytope, written out directly from
/// the reduced matrix.
pub fn oracle_rows(d: &ReducedDistanceMatrix) -> Vec<(Vec<f64>, f64)> {
    let n = d.num_points();
    let mut rows = Vec::new();
    let unit = |i: usize, s: f64| {
        let mut a = vec![0.0; n];
        a[i] = s;
        a
    };
    if n == 1 {
        rows.push((vec![1.0], d.get(0, 0)));
        rows.push((vec![-1.0], 0.0));
        return rows;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut a = vec![0.0; n];
            a[i] = 1.0;
            a[j] = 1.0;
            rows.push((a, d.get(i, j)));
        }
    }
    for i in 0..n {
        rows.push((unit(i, -1.0), 0.0));
    }
    if d.h() > 0.0 {
        for i in 0..n {
            rows.push((unit(i, 1.0), 1.0 / d.h()));
        }
    }
    rows
}

/// Gauss-Jordan elimination with full pivoting; `None` if singular.
#[allow(clippy::needless_range_loop)]
pub fn gauss_jordan(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let (mut pr, mut pc, mut best) = (col, col, 0.0);
        for r in col..n {
            for c in col..n {
                if a[r][c].abs() > best {
                    best = a[r][c].abs();
                    pr = r;
                    pc = c;
                }
            }
        }
        if best < 1e-12 {
            return None;
        }
        a.swap(col, pr);
        b.swap(col, pr);
        for row in a.iter_mut() {
            row.swap(col, pc);
        }
        perm.swap(col, pc);
        let piv = a[col][col];
        for c in 0..n {
            a[col][c] /= piv;
        }
        b[col] /= piv;
        for r in 0..n {
            if r != col && a[r][col] != 0.0 {
                let f = a[r][col];
                for c in 0..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for (k, &p) in perm.iter().enumerate() {
        x[p] = b[k];
    }
    Some(x)
}

/// Every basic feasible solution of the row system: all `N`-subsets of rows
/// are solved, infeasible or repeated solutions dropped.
pub fn oracle_vertices(d: &ReducedDistanceMatrix) -> Vec<Vec<f64>> {
    let rows = oracle_rows(d);
    let n = d.num_points();
    let scale = rows.iter().map(|r| r.1.abs()).fold(1.0, f64::max);
    let mut out: Vec<Vec<f64>> = Vec::new();
    let mut pick: Vec<usize> = (0..n).collect();
    loop {
        let a = pick.iter().map(|&k| rows[k].0.clone()).collect();
        let b = pick.iter().map(|&k| rows[k].1).collect();
        if let Some(x) = gauss_jordan(a, b) {
            let feasible = rows
                .iter()
                .all(|(a, b)| a.iter().zip(&x).map(|(p, q)| p * q).sum::<f64>() <= b + 1e-9 * scale);
            if feasible && !out.iter().any(|v| max_diff(v, &x) <= 1e-7 * scale) {
                out.push(x);
            }
        }
        // next combination in lexicographic order
        let m = rows.len();
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if pick[k] < m - n + k {
                pick[k] += 1;
                for t in (k + 1)..n {
                    pick[t] = pick[t - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Whether two vertex lists agree as sets within `tol`.
pub fn same_set(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter().all(|v| b.iter().any(|w| max_diff(v, w) <= tol))
        && b.iter().all(|v| a.iter().any(|w| max_diff(v, w) <= tol))
}

/// Disc-area objective written out term by term.
pub fn oracle_objective(r: &[f64], h: f64) -> f64 {
    let theta_v_pi = 3.0 * (-1.0f64 / 3.0).acos();
    r.iter().map(|&x| theta_v_pi * (-2.0 * h * x).exp() * x * x).sum()
}
