//! Order-stable floating point reductions.

use crate::scalar::Real;

/// Pairwise (tree) sum over `values` in index order.
///
/// The association pattern depends only on `values.len()`, so the result is
/// bit-identical no matter how the inputs were produced.
pub fn pairwise_sum<T: Real>(values: &[T]) -> T {
    const LEAF: usize = 8;
    if values.len() <= LEAF {
        let mut acc = T::zero();
        for &v in values {
            acc += v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_and_empty() {
        assert_eq!(pairwise_sum::<f64>(&[]), 0.0);
        assert_eq!(pairwise_sum(&[1.0, 2.0, 3.0]), 6.0);
    }

    #[test]
    fn long_sum_is_accurate() {
        let v = vec![0.1f64; 1 << 16];
        let s = pairwise_sum(&v);
        assert!((s - 6553.6).abs() < 1e-9);
    }
}
