use num_bigint::BigUint;
use num_traits::Zero;

use super::stirling::{factorial, stirling2_row};

/// Poly-Bernoulli number `B_n^(-m) = Σ_k (k!)^2 S(n+1, k+1) S(m+1, k+1)`,
/// the number of `m x n` Cauchon diagrams.
pub fn poly_bernoulli(m: usize, n: usize) -> BigUint {
    let sm = stirling2_row(m + 1);
    let sn = stirling2_row(n + 1);
    (0..=m.min(n))
        .map(|k| {
            let f = factorial(k);
            &f * &f * &sn[k + 1] * &sm[k + 1]
        })
        .sum()
}

/// Number of `m x n` diagrams whose toric permutation is a single cycle:
/// `Σ_{k=1}^{min(m,n)} k! (k-1)! S(m, k) S(n, k)`.
pub fn single_cycle_count(m: usize, n: usize) -> BigUint {
    if m == 0 || n == 0 {
        return BigUint::zero();
    }
    let sm = stirling2_row(m);
    let sn = stirling2_row(n);
    (1..=m.min(n))
        .map(|k| factorial(k) * factorial(k - 1) * &sm[k] * &sn[k])
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_bernoulli_examples() {
        assert_eq!(poly_bernoulli(1, 1), BigUint::from(2u32));
        assert_eq!(poly_bernoulli(2, 2), BigUint::from(14u32));
        assert_eq!(poly_bernoulli(3, 3), BigUint::from(230u32));
        assert_eq!(poly_bernoulli(2, 1), BigUint::from(4u32));
        for n in 0..10 {
            assert_eq!(poly_bernoulli(1, n), BigUint::from(1u32 << n));
            assert_eq!(poly_bernoulli(0, n), BigUint::from(1u32));
        }
        for m in 0..8 {
            for n in 0..8 {
                assert_eq!(poly_bernoulli(m, n), poly_bernoulli(n, m));
            }
        }
    }

    #[test]
    fn single_cycle_examples() {
        assert_eq!(single_cycle_count(1, 1), BigUint::from(1u32));
        assert_eq!(single_cycle_count(2, 1), BigUint::from(1u32));
        assert_eq!(single_cycle_count(2, 2), BigUint::from(3u32));
    }
}
