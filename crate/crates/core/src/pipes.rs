//! Pipe dreams on diagrams.
//!
//! Every black square carries a crossing and every white square carries two
//! arcs, one joining its bottom edge to its left edge and one joining its
//! right edge to its top edge. Pipes enter on the bottom or right side of the
//! diagram, only ever travel up or left, and leave on the left or top side.
//!
//! Boundary labels (0-based here, 1-based in all text output). Rows are
//! labeled from the bottom up on both sides, columns from left to right;
//! `row_label(m, r) = m - 1 - r` for the grid row `r` counted from the top.
//!
//! * standard, start side: bottom of column `c` is `c`, right of a row is
//!   `n + row_label`;
//! * standard and toric, end side: left of a row is `row_label`, top of
//!   column `c` is `m + c`;
//! * toric, start side: right of a row is `row_label`, bottom of column `c`
//!   is `m + c`.
//!
//! With rows counted upward every traced permutation is restricted and the
//! all-white diagram traces the identity.

use crate::diagram::{Diagram, WhiteLabeling};
use crate::error::{Error, Result};
use crate::perm::{CycleDecomposition, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Heading {
    Up,
    Left,
}

impl Heading {
    fn turn(self) -> Self {
        match self {
            Heading::Up => Heading::Left,
            Heading::Left => Heading::Up,
        }
    }
}

/// Where a pipe leaves the diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Left { row: usize },
    Top { col: usize },
}

/// Boundary label of grid row `row` (counted from the top) in an `m`-row
/// diagram. The map is its own inverse.
pub fn row_label(m: usize, row: usize) -> usize {
    m - 1 - row
}

impl Exit {
    /// End-side label, shared by the standard and toric labelings.
    pub fn label(self, m: usize) -> usize {
        match self {
            Exit::Left { row } => row_label(m, row),
            Exit::Top { col } => m + col,
        }
    }
}

/// Follows a pipe that is about to leave square `(row, col)` heading `heading`.
pub fn travel_from(d: &Diagram, mut row: usize, mut col: usize, mut heading: Heading) -> Exit {
    loop {
        match heading {
            Heading::Up if row == 0 => return Exit::Top { col },
            Heading::Up => row -= 1,
            Heading::Left if col == 0 => return Exit::Left { row },
            Heading::Left => col -= 1,
        }
        if d.is_white(row, col) {
            heading = heading.turn();
        }
    }
}

/// Follows a pipe entering square `(row, col)` heading `heading`.
fn travel_into(d: &Diagram, row: usize, col: usize, heading: Heading) -> Exit {
    let heading = if d.is_white(row, col) {
        heading.turn()
    } else {
        heading
    };
    travel_from(d, row, col, heading)
}

fn from_bottom(d: &Diagram, col: usize) -> Exit {
    travel_into(d, d.rows() - 1, col, Heading::Up)
}

fn from_right(d: &Diagram, row: usize) -> Exit {
    travel_into(d, row, d.cols() - 1, Heading::Left)
}

/// The permutation of the all-black `m x n` diagram: `i ↦ m + i` for the
/// first `n` labels and `i ↦ i - n` for the rest (1-based).
pub fn omega(m: usize, n: usize) -> Permutation {
    let images = (0..n).map(|i| m + i).chain(0..m).collect();
    Permutation::new(images).expect("omega is a bijection")
}

/// The restricted permutation of `d`: start label to end label under the
/// standard labeling.
pub fn trace_sigma(d: &Diagram) -> Permutation {
    let (m, n) = (d.rows(), d.cols());
    let images = (0..n)
        .map(|c| from_bottom(d, c))
        .chain((0..m).map(|j| from_right(d, row_label(m, j))))
        .map(|exit| exit.label(m))
        .collect();
    Permutation::new(images).expect("pipes define a bijection")
}

/// `-n <= σ(i) - i <= m` for every `i`.
pub fn is_restricted(p: &Permutation, m: usize, n: usize) -> Result<bool> {
    if p.len() != m + n {
        return Err(Error::SizeMismatch {
            expected: m + n,
            found: p.len(),
        });
    }
    Ok(p.images().iter().enumerate().all(|(i, &x)| {
        let delta = x as isize - i as isize;
        -(n as isize) <= delta && delta <= m as isize
    }))
}

/// `τ = σ ∘ ω⁻¹`.
pub fn toric_perm(d: &Diagram) -> Permutation {
    trace_sigma(d)
        .compose(&omega(d.rows(), d.cols()).inverse())
        .expect("sizes agree")
}

/// The toric permutation traced directly under the toric labeling.
pub fn toric_perm_traced(d: &Diagram) -> Permutation {
    let (m, n) = (d.rows(), d.cols());
    let images = (0..m)
        .map(|j| from_right(d, row_label(m, j)))
        .chain((0..n).map(|c| from_bottom(d, c)))
        .map(|exit| exit.label(m))
        .collect();
    Permutation::new(images).expect("pipes define a bijection")
}

/// Toric labels `(l, u)` reached by leaving white square `label` through its
/// left edge and through its top edge respectively.
pub fn toric_endpoints(d: &Diagram, lab: &WhiteLabeling, label: usize) -> Result<(usize, usize)> {
    let (row, col) = lab.position(label)?;
    let m = d.rows();
    let l = travel_from(d, row, col, Heading::Left).label(m);
    let u = travel_from(d, row, col, Heading::Up).label(m);
    Ok((l, u))
}

/// All `(l, u)` pairs, indexed by white label.
pub fn all_toric_endpoints(d: &Diagram, lab: &WhiteLabeling) -> Vec<(usize, usize)> {
    (0..lab.len())
        .map(|i| toric_endpoints(d, lab, i).expect("label in range"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumDimension {
    pub dimension: usize,
    /// Only Cauchon diagrams correspond to strata; for other diagrams the
    /// number is still computed but carries no meaning.
    pub cauchon: bool,
    pub toric: CycleDecomposition,
}

/// Number of even-length cycles of the toric permutation.
pub fn stratum_dim_cycles(d: &Diagram) -> StratumDimension {
    let toric = toric_perm(d).cycles();
    StratumDimension {
        dimension: toric.odd_cycle_count(),
        cauchon: d.is_cauchon(),
        toric,
    }
}
