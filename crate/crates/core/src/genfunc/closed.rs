//! Closed forms `h(m, n, d) = Σ_k c_k(m, d) k^n` for the number of
//! `d`-dimensional strata, obtained by expanding the trivariate generating
//! function in Stirling numbers.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::poly::RatPoly;
use super::stirling::{binomial, factorial, stirling2_row};
use crate::error::{Error, Result};

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

pub(crate) fn rat_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// For fixed `m`, the `t`-polynomial attached to each base `k`:
///
/// `Σ C(m, m') S(m', l1) S(m - m', l2) (-1)^(m - m') (½(1-t))_l1 (-½(1+t))_l2`
///
/// summed over `0 <= m' <= m`, `0 <= l1 <= m'`, `0 <= l2 <= m - m'` with
/// `1 - l1 + l2 = k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingFormula {
    m: usize,
    by_base: BTreeMap<i64, RatPoly>,
}

impl CountingFormula {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be positive".into()));
        }
        let rows: Vec<Vec<BigUint>> = (0..=m).map(stirling2_row).collect();
        let up = RatPoly::affine(half(), -half());
        let down = RatPoly::affine(-half(), -half());
        let up_ff: Vec<RatPoly> = (0..=m).map(|k| up.falling_factorial(k)).collect();
        let down_ff: Vec<RatPoly> = (0..=m).map(|k| down.falling_factorial(k)).collect();

        let mut by_base: BTreeMap<i64, RatPoly> = BTreeMap::new();
        for mp in 0..=m {
            let sign = if (m - mp).is_multiple_of(2) { 1 } else { -1 };
            let outer = BigInt::from(binomial(m, mp)) * sign;
            for l1 in 0..=mp {
                let s1 = &rows[mp][l1];
                if s1.is_zero() {
                    continue;
                }
                for l2 in 0..=m - mp {
                    let s2 = &rows[m - mp][l2];
                    if s2.is_zero() {
                        continue;
                    }
                    let scalar = &outer * BigInt::from(s1 * s2);
                    let term = (&up_ff[l1] * &down_ff[l2]).scale(&BigRational::from_integer(scalar));
                    let base = 1 - l1 as i64 + l2 as i64;
                    let slot = by_base.entry(base).or_default();
                    *slot = &*slot + &term;
                }
            }
        }
        by_base.retain(|_, p| !p.is_zero());
        Ok(Self { m, by_base })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Per-base polynomials, including the base `0` term that vanishes for
    /// every `n >= 1`.
    pub fn by_base(&self) -> &BTreeMap<i64, RatPoly> {
        &self.by_base
    }

    /// `Σ_d h(m, n, d) t^d`.
    pub fn h_poly(&self, n: usize) -> Result<RatPoly> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        Ok(self
            .by_base
            .iter()
            .filter(|(&k, _)| k != 0)
            .fold(RatPoly::zero(), |acc, (&k, p)| {
                let power = BigRational::from_integer(BigInt::from(k).pow(n as u32));
                &acc + &p.scale(&power)
            }))
    }

    pub fn h(&self, n: usize, d: usize) -> Result<BigUint> {
        to_count(self.h_poly(n)?.coeff(d))
    }

    /// All of `h(m, n, 0..)` for one `n`, trailing zeros dropped.
    pub fn h_all(&self, n: usize) -> Result<Vec<BigUint>> {
        self.h_poly(n)?.coeffs().iter().cloned().map(to_count).collect()
    }

    pub fn closed_form(&self, d: usize) -> ClosedForm {
        let coeffs = self
            .by_base
            .iter()
            .filter(|(&k, _)| k != 0)
            .map(|(&k, p)| (k, p.coeff(d)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        ClosedForm {
            m: self.m,
            d,
            coeffs,
        }
    }
}

fn to_count(x: BigRational) -> Result<BigUint> {
    if !x.is_integer() || x.is_negative() {
        return Err(Error::InvalidArgument(format!(
            "closed form produced {} instead of a count",
            rat_string(&x)
        )));
    }
    Ok(x.to_integer().to_biguint().expect("nonnegative"))
}

/// `h(m, n, d) = Σ_k coeffs[k] k^n` for every `n >= 1`. Bases with a zero
/// coefficient are omitted, and so is `k = 0` since `0^n = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub m: usize,
    pub d: usize,
    pub coeffs: BTreeMap<i64, BigRational>,
}

impl ClosedForm {
    pub fn coeff(&self, k: i64) -> BigRational {
        self.coeffs.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn evaluate(&self, n: usize) -> BigRational {
        self.coeffs
            .iter()
            .map(|(&k, c)| c * BigRational::from_integer(BigInt::from(k).pow(n as u32)))
            .sum()
    }

    /// Terms by decreasing base, e.g. `3/4·3^n - 1/2·2^n + 1/2 - 1/4·(-1)^n`.
    pub fn to_formula_string(&self) -> String {
        let mut out = String::new();
        for (i, (&k, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            out.push_str(match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let abs = c.abs();
            match k {
                1 => out.push_str(&rat_string(&abs)),
                _ => {
                    if !abs.is_one() {
                        out.push_str(&rat_string(&abs));
                        out.push('·');
                    }
                    if k < 0 {
                        out.push_str(&format!("({k})^n"));
                    } else {
                        out.push_str(&format!("{k}^n"));
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl Serialize for ClosedForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: BTreeMap<String, String> = self
            .coeffs
            .iter()
            .map(|(k, c)| (k.to_string(), rat_string(c)))
            .collect();
        let mut st = s.serialize_struct("ClosedForm", 3)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

pub fn closed_form_coeffs(m: usize, d: usize) -> Result<ClosedForm> {
    Ok(CountingFormula::new(m)?.closed_form(d))
}

/// Number of `m x n` Cauchon diagrams whose stratum has dimension `d`.
pub fn h_closed(m: usize, n: usize, d: usize) -> Result<BigUint> {
    CountingFormula::new(m)?.h(n, d)
}

/// `(t + 1)(t + 3) ... (t + 2m - 1)`.
pub fn a_poly(m: usize) -> RatPoly {
    (1..=m).fold(RatPoly::one(), |acc, i| {
        &acc * &RatPoly::new(vec![
            BigRational::from_integer(BigInt::from(2 * i as i64 - 1)),
            BigRational::one(),
        ])
    })
}

pub fn a_coeff(m: usize, d: usize) -> BigUint {
    a_poly(m)
        .coeff(d)
        .to_integer()
        .to_biguint()
        .expect("coefficients of a product of monic positive factors are nonnegative")
}

/// Limit of `h(m, n, d) / B_n^(-m)` as `n → ∞`: `a(d) / (m! 2^m)`.
pub fn asymptotic_proportion(m: usize, d: usize) -> Result<BigRational> {
    if m == 0 || d > m {
        return Err(Error::InvalidArgument(format!(
            "need m >= 1 and 0 <= d <= m, got m={m}, d={d}"
        )));
    }
    let denom = BigInt::from(factorial(m)) * BigInt::from(2).pow(m as u32);
    Ok(BigRational::new(BigInt::from(a_coeff(m, d)), denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn form(pairs: &[(i64, i64, i64)]) -> BTreeMap<i64, BigRational> {
        pairs.iter().map(|&(k, n, d)| (k, q(n, d))).collect()
    }

    #[test]
    fn low_rows() {
        assert_eq!(
            closed_form_coeffs(2, 0).unwrap().coeffs,
            form(&[(3, 3, 4), (2, -1, 2), (1, 1, 2), (-1, -1, 4)])
        );
        assert_eq!(
            closed_form_coeffs(2, 2).unwrap().coeffs,
            form(&[(3, 1, 4), (1, -1, 2), (-1, 1, 4)])
        );
        assert_eq!(
            closed_form_coeffs(3, 3).unwrap().coeffs,
            form(&[(4, 1, 8), (2, -3, 8), (-2, -1, 8)])
        );
    }

    #[test]
    fn spot_values() {
        assert_eq!(h_closed(2, 2, 0).unwrap(), BigUint::from(5u32));
        assert_eq!(h_closed(3, 3, 0).unwrap(), BigUint::from(70u32));
        let f = CountingFormula::new(2).unwrap();
        assert_eq!(
            (0..3).map(|d| f.h(1, d).unwrap()).collect::<Vec<_>>(),
            vec![BigUint::from(2u32), BigUint::from(2u32), BigUint::from(0u32)]
        );
        assert!(f.h_poly(0).is_err());
        assert!(CountingFormula::new(0).is_err());
    }

    #[test]
    fn a_polynomial() {
        assert_eq!(a_poly(2).to_string(), "t^2 + 4t + 3");
        assert_eq!(
            (0..3).map(|d| a_coeff(2, d)).collect::<Vec<_>>(),
            vec![BigUint::from(3u32), BigUint::from(4u32), BigUint::from(1u32)]
        );
        assert_eq!(a_poly(1).to_string(), "t + 1");
        let lead = closed_form_coeffs(2, 0).unwrap().coeff(3);
        assert_eq!(lead, q(3, 4));
    }

    #[test]
    fn asymptotic_examples() {
        assert_eq!(asymptotic_proportion(2, 0).unwrap(), q(3, 8));
        assert_eq!(asymptotic_proportion(1, 0).unwrap(), q(1, 2));
        assert_eq!(asymptotic_proportion(1, 1).unwrap(), q(1, 2));
        assert_eq!(asymptotic_proportion(2, 1).unwrap(), q(1, 2));
        for m in 1..7 {
            let total: BigRational = (0..=m).map(|d| asymptotic_proportion(m, d).unwrap()).sum();
            assert_eq!(total, q(1, 1));
        }
        assert!(asymptotic_proportion(2, 3).is_err());
    }

    #[test]
    fn formula_rendering_and_json() {
        let c = closed_form_coeffs(2, 0).unwrap();
        assert_eq!(c.to_formula_string(), "3/4·3^n - 1/2·2^n + 1/2 - 1/4·(-1)^n");
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"m":2,"d":0,"coeffs":{"-1":"-1/4","1":"1/2","2":"-1/2","3":"3/4"}}"#
        );
        assert_eq!(c.evaluate(2), q(5, 1));
    }
}
