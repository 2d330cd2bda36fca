//! Exact linear algebra over the rationals, and the two matrices whose
//! kernels measure stratum dimension: the skew-symmetric white-square matrix
//! `M(D)` and the sum of permutation matrices `P_ω + P_σ`.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::diagram::{Diagram, WhiteLabeling};
use crate::error::{Error, Result};
use crate::perm::{CycleDecomposition, Permutation};
use crate::pipes::{all_toric_endpoints, omega, row_label, trace_sigma};

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn rat_to_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactVector(Vec<BigRational>);

impl ExactVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        Self(entries)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![BigRational::zero(); len])
    }

    pub fn from_integers(entries: &[i64]) -> Self {
        Self(entries.iter().map(|&x| rat(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self(self.0.iter().map(|x| x * factor).collect())
    }

    pub fn scale_int(&self, factor: i64) -> Self {
        self.scale(&rat(factor))
    }

    /// Entries as `i64` when all of them are small integers.
    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|x| if x.is_integer() { x.numer().to_i64() } else { None })
            .collect()
    }

    fn sum_over(&self, indices: &[usize]) -> BigRational {
        indices.iter().map(|&i| &self.0[i]).sum()
    }
}

impl Index<usize> for ExactVector {
    type Output = BigRational;

    fn index(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

impl Add for &ExactVector {
    type Output = ExactVector;

    fn add(self, rhs: &ExactVector) -> ExactVector {
        assert_eq!(self.len(), rhs.len(), "vector lengths differ");
        ExactVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExactVector {
    type Output = ExactVector;

    fn sub(self, rhs: &ExactVector) -> ExactVector {
        assert_eq!(self.len(), rhs.len(), "vector lengths differ");
        ExactVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ExactVector {
    type Output = ExactVector;

    fn neg(self) -> ExactVector {
        ExactVector(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rat_to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { rows, cols, data }
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::SizeMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self::from_fn(rows.len(), cols, |i, j| rat(rows[i][j])))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..=i).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    pub fn mul_vec(&self, v: &ExactVector) -> Result<ExactVector> {
        if v.len() != self.cols {
            return Err(Error::SizeMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(ExactVector(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(v.entries()).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    /// Rows scaled by the lcm of their denominators.
    fn integer_rows(&self) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            let row = self.row(i);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            out.extend(row.iter().map(|x| x.numer() * (&lcm / x.denom())));
        }
        out
    }

    /// Rank over the rationals by fraction-free (Bareiss) elimination. Runs
    /// in `i128` and restarts with big integers if an intermediate overflows.
    pub fn rank(&self) -> usize {
        let ints = self.integer_rows();
        let small: Option<Vec<i128>> = ints.iter().map(ToPrimitive::to_i128).collect();
        if let Some(rank) = small.and_then(|a| fraction_free_rank(a, self.rows, self.cols)) {
            return rank;
        }
        fraction_free_rank(ints, self.rows, self.cols).expect("big integers do not overflow")
    }

    pub fn kernel_dim(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.cols - self.rank())
    }

    /// A basis of the right null space, from the reduced row echelon form:
    /// one vector per free column, with a 1 in that column.
    pub fn nullspace(&self) -> Vec<ExactVector> {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
                continue;
            };
            for j in 0..cols {
                a.swap(r * cols + j, p * cols + j);
            }
            let inv = a[r * cols + c].recip();
            for j in c..cols {
                a[r * cols + j] = &a[r * cols + j] * &inv;
            }
            for i in 0..rows {
                if i == r || a[i * cols + c].is_zero() {
                    continue;
                }
                let factor = a[i * cols + c].clone();
                for j in c..cols {
                    let delta = &factor * &a[r * cols + j];
                    a[i * cols + j] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        let free = (0..cols).filter(|c| !pivots.contains(c));
        free.map(|f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[row * cols + f];
            }
            ExactVector(v)
        })
        .collect()
    }

    /// Integer grid, one row per line. Non-integer entries print as `p/q`.
    pub fn to_grid_string(&self) -> String {
        let cells: Vec<String> = self.data.iter().map(rat_to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        (0..self.rows)
            .map(|i| {
                cells[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .map(|s| format!("{s:>width$}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let data: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(rat_to_string).collect())
            .collect();
        let mut st = s.serialize_struct("ExactMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("data", &data)?;
        st.end()
    }
}

fn fraction_free_rank<T>(mut a: Vec<T>, rows: usize, cols: usize) -> Option<usize>
where
    T: Clone + Zero + One + CheckedMul + CheckedSub + CheckedDiv,
{
    let mut prev = T::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(rank * cols + j, p * cols + j);
            }
        }
        let pivot = a[rank * cols + c].clone();
        for i in rank + 1..rows {
            let lead = a[i * cols + c].clone();
            for j in c + 1..cols {
                let x = a[i * cols + j].checked_mul(&pivot)?;
                let y = lead.checked_mul(&a[rank * cols + j])?;
                a[i * cols + j] = x.checked_sub(&y)?.checked_div(&prev)?;
            }
            a[i * cols + c] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

/// `M(D)[i][j]` is `1` when white square `i` is strictly below or strictly
/// right of white square `j`, `-1` when strictly above or strictly left, and
/// `0` otherwise.
pub fn build_md(lab: &WhiteLabeling) -> ExactMatrix {
    let size = lab.len();
    let pos = lab.positions();
    let m = ExactMatrix::from_fn(size, size, |i, j| {
        let ((ri, ci), (rj, cj)) = (pos[i], pos[j]);
        let sign = if ci == cj && ri != rj {
            if ri > rj { 1 } else { -1 }
        } else if ri == rj && ci != cj {
            if ci > cj { 1 } else { -1 }
        } else {
            0
        };
        rat(sign)
    });
    debug_assert!(m.is_skew_symmetric());
    m
}

/// `P_ω + P_σ` where `P_μ[i][j] = 1` iff `j = μ(i)`.
pub fn build_pp(sigma: &Permutation, omega: &Permutation) -> Result<ExactMatrix> {
    if sigma.len() != omega.len() {
        return Err(Error::SizeMismatch {
            expected: omega.len(),
            found: sigma.len(),
        });
    }
    let k = sigma.len();
    let mut m = ExactMatrix::zeros(k, k);
    for a in 0..k {
        for j in [omega.apply(a), sigma.apply(a)] {
            let v = m.get(a, j) + BigRational::one();
            m.set(a, j, v);
        }
    }
    Ok(m)
}

/// `P_ω + P_σ` for the diagram's own `σ`.
pub fn build_pp_for(d: &Diagram) -> ExactMatrix {
    build_pp(&trace_sigma(d), &omega(d.rows(), d.cols())).expect("same size")
}

fn check_len(v: &ExactVector, expected: usize) -> Result<()> {
    if v.len() == expected {
        Ok(())
    } else {
        Err(Error::SizeMismatch {
            expected,
            found: v.len(),
        })
    }
}

/// Kernel test for `M(D)` square by square: `w_A + w_L = w_B + w_R` at every
/// white square, sums taken over the white squares above, left, below and
/// right.
pub fn in_kernel_md(lab: &WhiteLabeling, w: &ExactVector) -> Result<bool> {
    check_len(w, lab.len())?;
    Ok((0..lab.len()).all(|i| {
        let r = lab.regions(i).expect("label in range");
        w.sum_over(r.above) + w.sum_over(r.left) == w.sum_over(r.below) + w.sum_over(r.right)
    }))
}

fn in_kernel_pp(d: &Diagram, v: &ExactVector) -> bool {
    build_pp_for(d)
        .mul_vec(v)
        .map(|x| x.is_zero())
        .unwrap_or(false)
}

/// `φ(v)_i = v[l(i)] - v[u(i)]`, mapping `ker(P_ω + P_σ)` into `ker M(D)`.
pub fn phi_map(d: &Diagram, lab: &WhiteLabeling, v: &ExactVector) -> Result<ExactVector> {
    check_len(v, d.rows() + d.cols())?;
    if !in_kernel_pp(d, v) {
        return Err(Error::NotInKernel("P_omega + P_sigma"));
    }
    Ok(phi_unchecked(d, lab, v))
}

pub(crate) fn phi_unchecked(d: &Diagram, lab: &WhiteLabeling, v: &ExactVector) -> ExactVector {
    ExactVector(
        all_toric_endpoints(d, lab)
            .into_iter()
            .map(|(l, u)| &v[l] - &v[u])
            .collect(),
    )
}

/// `ψ(w)`: column labels get the sum of `w` down their column, row labels
/// get minus the sum along their row. Maps `ker M(D)` into `ker(P_ω + P_σ)`.
pub fn psi_map(d: &Diagram, lab: &WhiteLabeling, w: &ExactVector) -> Result<ExactVector> {
    check_len(w, lab.len())?;
    if !in_kernel_md(lab, w)? {
        return Err(Error::NotInKernel("M(D)"));
    }
    Ok(psi_unchecked(d, lab, w))
}

pub(crate) fn psi_unchecked(d: &Diagram, lab: &WhiteLabeling, w: &ExactVector) -> ExactVector {
    let m = d.rows();
    let rows = (0..m).map(|j| -w.sum_over(lab.row(row_label(m, j))));
    let cols = (0..d.cols()).map(|c| w.sum_over(lab.column(c)));
    ExactVector(rows.chain(cols).collect())
}

/// For each even-length cycle `(a_1 .. a_2k)`, the vector with `+1` at
/// `a_1, a_3, ..`, `-1` at `a_2, a_4, ..` and `0` elsewhere.
pub fn kernel_basis_from_cycles(tau: &CycleDecomposition) -> Vec<ExactVector> {
    tau.odd_cycles()
        .map(|cycle| {
            let mut v = vec![BigRational::zero(); tau.size()];
            for (i, &b) in cycle.iter().enumerate() {
                v[b] = if i % 2 == 0 { rat(1) } else { rat(-1) };
            }
            ExactVector(v)
        })
        .collect()
}

/// Rank of a set of vectors of equal length.
pub fn span_dim(vectors: &[ExactVector]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    ExactMatrix::from_fn(vectors.len(), first.len(), |i, j| vectors[i][j].clone()).rank()
}

/// Whether every entry's absolute value is at most one.
pub fn is_unit_entried(m: &ExactMatrix) -> bool {
    m.data.iter().all(|x| x.abs() <= BigRational::one())
}
