//! Order-fixed reductions. Parallel reductions split the input into fixed
//! chunks so the result does not depend on thread scheduling.

use rayon::prelude::*;

const CHUNK: usize = 4096;

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut carry = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// Dot product with chunked parallelism and a deterministic combine.
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let partial: Vec<f64> = a
        .par_chunks(CHUNK)
        .zip(b.par_chunks(CHUNK))
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>())
        .collect();
    compensated_sum(partial)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensation_recovers_small_terms() {
        let v = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(v), 2.0);
    }

    #[test]
    fn dot_is_reproducible() {
        let a: Vec<f64> = (0..100_000).map(|i| (i as f64 * 0.37).sin()).collect();
        let b: Vec<f64> = (0..100_000).map(|i| (i as f64 * 0.11).cos()).collect();
        let first = dot(&a, &b);
        for _ in 0..10 {
            assert_eq!(dot(&a, &b).to_bits(), first.to_bits());
        }
    }
}
