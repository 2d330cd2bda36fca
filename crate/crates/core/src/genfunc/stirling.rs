use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Binomial coefficient by the multiplicative formula; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Stirling numbers of the second kind `S(n, 0..=n)` from the recurrence
/// `S(n, k) = k S(n-1, k) + S(n-1, k-1)`.
pub fn stirling2_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for i in 1..=n {
        let mut next = vec![BigUint::zero(); i + 1];
        for k in 1..=i {
            let stay = if k < i { &row[k] * k } else { BigUint::zero() };
            next[k] = stay + &row[k - 1];
        }
        row = next;
    }
    row
}

/// Number of partitions of an `n`-set into `k` nonempty blocks.
pub fn stirling2(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    stirling2_row(n).swap_remove(k)
}

/// `S(n, k) = (1/k!) Σ_j (-1)^(k-j) C(k, j) j^n`, evaluated independently of
/// the recurrence.
pub fn stirling2_alternating(n: usize, k: usize) -> BigUint {
    let mut sum = BigInt::zero();
    for j in 0..=k {
        let term = BigInt::from(binomial(k, j)) * BigInt::from(j).pow(n as u32);
        if (k - j).is_odd() {
            sum -= term;
        } else {
            sum += term;
        }
    }
    let (q, r) = sum.div_rem(&BigInt::from(factorial(k)));
    debug_assert!(r.is_zero());
    q.to_biguint().expect("Stirling numbers are nonnegative")
}
