//! Small dense routines for the constraint systems of the radii polytope.

use crate::scalar::Real;

/// Solves the square system `a · x = b` by Gaussian elimination with partial
/// pivoting. Returns `None` when a pivot falls below `tol` times the largest
/// entry of `a`.
#[allow(clippy::needless_range_loop)]
pub(crate) fn solve<T: Real>(mut a: Vec<Vec<T>>, mut b: Vec<T>, tol: T) -> Option<Vec<T>> {
    let n = b.len();
    let scale = a.iter().flat_map(|r| r.iter()).fold(T::zero(), |m, v| m.max(v.abs()));
    if scale == T::zero() {
        return None;
    }
    let threshold = tol * scale;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        if a[piv][col].abs() <= threshold {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in (col + 1)..n {
            let f = a[row][col] / a[col][col];
            if f == T::zero() {
                continue;
            }
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in (row + 1)..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Numerical rank of a set of row vectors.
#[allow(clippy::needless_range_loop)]
pub(crate) fn rank<T: Real>(rows: &[Vec<T>], tol: T) -> usize {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let Some(cols) = m.first().map(|r| r.len()) else {
        return 0;
    };
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(T::zero(), |acc, v| acc.max(v.abs()));
    if scale == T::zero() {
        return 0;
    }
    let threshold = tol * scale;
    let mut r = 0;
    for col in 0..cols {
        if r == m.len() {
            break;
        }
        let piv = (r..m.len())
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        if m[piv][col].abs() <= threshold {
            continue;
        }
        m.swap(r, piv);
        for row in (r + 1)..m.len() {
            let f = m[row][col] / m[r][col];
            for k in col..cols {
                let v = m[r][k];
                m[row][k] -= f * v;
            }
        }
        r += 1;
    }
    r
}

#[inline]
pub(crate) fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}
