//! Truncated bivariate power series in `x, y` whose coefficients are
//! polynomials in `t`.
//!
//! Coefficients are stored in ordinary form: `coeff(i, j)` multiplies
//! `x^i y^j`. Exponential generating function coefficients, i.e. the
//! multiplier of `x^i y^j / (i! j!)`, come from [`TruncatedSeries::egf_coeff`]
//! and are the only place the factorials enter.
//!
//! Truncation keeps `i <= max_x` and `j <= max_y`. That box is closed under
//! products, so `exp` and `log` computed through the Euler operator
//! `x ∂x + y ∂y` are exact on every retained coefficient.

use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use super::counts::single_cycle_count;
use super::poly::RatPoly;
use super::stirling::factorial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    max_x: usize,
    max_y: usize,
    coeffs: Vec<RatPoly>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl TruncatedSeries {
    pub fn zero(max_x: usize, max_y: usize) -> Self {
        Self {
            max_x,
            max_y,
            coeffs: vec![RatPoly::zero(); (max_x + 1) * (max_y + 1)],
        }
    }

    pub fn from_fn(max_x: usize, max_y: usize, mut f: impl FnMut(usize, usize) -> RatPoly) -> Self {
        let mut s = Self::zero(max_x, max_y);
        for i in 0..=max_x {
            for j in 0..=max_y {
                s.coeffs[i * (max_y + 1) + j] = f(i, j);
            }
        }
        s
    }

    pub fn constant(max_x: usize, max_y: usize, c: RatPoly) -> Self {
        let mut s = Self::zero(max_x, max_y);
        s.coeffs[0] = c;
        s
    }

    /// `exp(a x + b y)`, coefficient `a^i b^j / (i! j!)`.
    pub fn exp_linear(max_x: usize, max_y: usize, a: i64, b: i64) -> Self {
        Self::from_fn(max_x, max_y, |i, j| {
            let num = BigInt::from(a).pow(i as u32) * BigInt::from(b).pow(j as u32);
            let den = BigInt::from(factorial(i) * factorial(j));
            RatPoly::constant(BigRational::new(num, den))
        })
    }

    /// `a x + b y`.
    pub fn linear(max_x: usize, max_y: usize, a: i64, b: i64) -> Self {
        let mut s = Self::zero(max_x, max_y);
        if max_x >= 1 {
            s.coeffs[max_y + 1] = RatPoly::from_int(a);
        }
        if max_y >= 1 {
            s.coeffs[1] = RatPoly::from_int(b);
        }
        s
    }

    /// Series from exponential coefficients: `Σ f(i, j) x^i y^j / (i! j!)`.
    pub fn from_egf(max_x: usize, max_y: usize, mut f: impl FnMut(usize, usize) -> RatPoly) -> Self {
        Self::from_fn(max_x, max_y, |i, j| {
            let den = BigRational::from_integer(BigInt::from(factorial(i) * factorial(j)));
            f(i, j).scale(&den.recip())
        })
    }

    pub fn max_x(&self) -> usize {
        self.max_x
    }

    pub fn max_y(&self) -> usize {
        self.max_y
    }

    pub fn coeff(&self, i: usize, j: usize) -> &RatPoly {
        &self.coeffs[i * (self.max_y + 1) + j]
    }

    /// `i! j! [x^i y^j]`.
    pub fn egf_coeff(&self, i: usize, j: usize) -> RatPoly {
        let f = BigRational::from_integer(BigInt::from(factorial(i) * factorial(j)));
        self.coeff(i, j).scale(&f)
    }

    fn check_shape(&self, other: &Self) {
        assert_eq!(
            (self.max_x, self.max_y),
            (other.max_x, other.max_y),
            "truncation orders differ"
        );
    }

    pub fn scale(&self, p: &RatPoly) -> Self {
        Self {
            max_x: self.max_x,
            max_y: self.max_y,
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    /// `F(-x, -y)`.
    pub fn negate_args(&self) -> Self {
        Self::from_fn(self.max_x, self.max_y, |i, j| {
            let c = self.coeff(i, j);
            if (i + j) % 2 == 0 {
                c.clone()
            } else {
                -c
            }
        })
    }

    /// `exp(F)` for `F(0, 0) = 0`, from `E exp(F) = exp(F) E F` with
    /// `E = x ∂x + y ∂y`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm {
                expected: 0,
                found: self.coeffs[0].to_string(),
            });
        }
        let mut g = Self::constant(self.max_x, self.max_y, RatPoly::one());
        for total in 1..=self.max_x + self.max_y {
            for i in total.saturating_sub(self.max_y)..=total.min(self.max_x) {
                let j = total - i;
                let mut acc = RatPoly::zero();
                for a in 0..=i {
                    for b in 0..=j {
                        if a + b == 0 {
                            continue;
                        }
                        let f = self.coeff(a, b);
                        if f.is_zero() {
                            continue;
                        }
                        let term = &(f * g.coeff(i - a, j - b)).scale(&rat((a + b) as i64, 1));
                        acc = &acc + term;
                    }
                }
                g.coeffs[i * (self.max_y + 1) + j] = acc.scale(&rat(1, total as i64));
            }
        }
        Ok(g)
    }

    /// `log(S)` for `S(0, 0) = 1`, from `E S = S E log(S)`.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != RatPoly::one() {
            return Err(Error::ConstantTerm {
                expected: 1,
                found: self.coeffs[0].to_string(),
            });
        }
        let mut l = Self::zero(self.max_x, self.max_y);
        for total in 1..=self.max_x + self.max_y {
            for i in total.saturating_sub(self.max_y)..=total.min(self.max_x) {
                let j = total - i;
                let mut acc = self.coeff(i, j).scale(&rat(total as i64, 1));
                for a in 0..=i {
                    for b in 0..=j {
                        if a + b == 0 || (a, b) == (i, j) {
                            continue;
                        }
                        let la = l.coeff(a, b);
                        if la.is_zero() {
                            continue;
                        }
                        let term = (la * self.coeff(i - a, j - b)).scale(&rat((a + b) as i64, 1));
                        acc = &acc - &term;
                    }
                }
                l.coeffs[i * (self.max_y + 1) + j] = acc.scale(&rat(1, total as i64));
            }
        }
        Ok(l)
    }

    /// `S^α = exp(α log S)` for `S(0, 0) = 1` and any exponent polynomial in `t`.
    pub fn pow(&self, alpha: &RatPoly) -> Result<Self> {
        self.log()?.scale(alpha).exp()
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_shape(rhs);
        TruncatedSeries {
            max_x: self.max_x,
            max_y: self.max_y,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_shape(rhs);
        TruncatedSeries {
            max_x: self.max_x,
            max_y: self.max_y,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_shape(rhs);
        let mut out = TruncatedSeries::zero(self.max_x, self.max_y);
        for a in 0..=self.max_x {
            for b in 0..=self.max_y {
                let f = self.coeff(a, b);
                if f.is_zero() {
                    continue;
                }
                for c in 0..=self.max_x - a {
                    for d in 0..=self.max_y - b {
                        let g = rhs.coeff(c, d);
                        if g.is_zero() {
                            continue;
                        }
                        let k = (a + c) * (self.max_y + 1) + b + d;
                        out.coeffs[k] = &out.coeffs[k] + &(f * g);
                    }
                }
            }
        }
        out
    }
}

fn affine(a: BigRational, b: BigRational) -> RatPoly {
    RatPoly::affine(a, b)
}

/// `(e^{-y} + e^{-x} - 1)^{(-1-t)/2} (e^x + e^y - 1)^{(1-t)/2}`; the `t^d`
/// coefficient of `egf_coeff(m, n)` is the number of `m x n` strata of
/// dimension `d`.
pub fn series_c(max_x: usize, max_y: usize) -> Result<TruncatedSeries> {
    let (mx, my) = (max_x, max_y);
    let one = TruncatedSeries::constant(mx, my, RatPoly::one());
    let neg = &(&TruncatedSeries::exp_linear(mx, my, 0, -1) + &TruncatedSeries::exp_linear(mx, my, -1, 0)) - &one;
    let pos = &(&TruncatedSeries::exp_linear(mx, my, 1, 0) + &TruncatedSeries::exp_linear(mx, my, 0, 1)) - &one;
    let first = neg.pow(&affine(rat(-1, 2), rat(-1, 2)))?;
    let second = pos.pow(&affine(rat(1, 2), rat(-1, 2)))?;
    Ok(&first * &second)
}

/// `e^{x+y} / (e^x + e^y - e^{x+y})`, the generating function of all
/// Cauchon diagrams.
pub fn series_c_total(max_x: usize, max_y: usize) -> Result<TruncatedSeries> {
    let (mx, my) = (max_x, max_y);
    let exy = TruncatedSeries::exp_linear(mx, my, 1, 1);
    let den = &(&TruncatedSeries::exp_linear(mx, my, 1, 0) + &TruncatedSeries::exp_linear(mx, my, 0, 1)) - &exy;
    Ok(&exy * &den.pow(&RatPoly::from_int(-1))?)
}

/// `Σ_{m,n >= 1} d(m, n) x^m y^n / (m! n!)` for the given single-cycle counts.
pub fn series_d_with(max_x: usize, max_y: usize, d: &dyn Fn(usize, usize) -> BigUint) -> TruncatedSeries {
    TruncatedSeries::from_egf(max_x, max_y, |i, j| {
        if i == 0 || j == 0 {
            RatPoly::zero()
        } else {
            RatPoly::constant(BigRational::from_integer(BigInt::from(d(i, j))))
        }
    })
}

pub fn series_d(max_x: usize, max_y: usize) -> TruncatedSeries {
    series_d_with(max_x, max_y, &|i, j| single_cycle_count(i, j))
}

/// Checks, to the truncation order, that `exp(x + y) exp(D)` equals
/// [`series_c_total`] and that `exp(x + y + D_e + t D_o)` equals
/// [`series_c`], where `D_e` and `D_o` are the odd and even total-degree
/// parts of `D`.
pub fn series_d_check(max_x: usize, max_y: usize) -> Result<bool> {
    series_d_check_with(max_x, max_y, &|i, j| single_cycle_count(i, j))
}

pub fn series_d_check_with(
    max_x: usize,
    max_y: usize,
    d: &dyn Fn(usize, usize) -> BigUint,
) -> Result<bool> {
    let (mx, my) = (max_x, max_y);
    let dser = series_d_with(mx, my, d);
    let xy = TruncatedSeries::linear(mx, my, 1, 1);

    let total = (&xy + &dser).exp()?;
    if total != series_c_total(mx, my)? {
        return Ok(false);
    }

    let flipped = dser.negate_args();
    let half = RatPoly::constant(rat(1, 2));
    let even_cycles = (&dser - &flipped).scale(&half);
    let odd_cycles = (&dser + &flipped).scale(&half);
    let refined = (&(&xy + &even_cycles) + &odd_cycles.scale(&RatPoly::t())).exp()?;
    Ok(refined == series_c(mx, my)?)
}
