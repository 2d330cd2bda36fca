//! Exhaustive generation of Cauchon diagrams and dimension tallies.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::AddAssign;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{Color, Diagram};
use crate::error::{Error, Result};
use crate::linalg::build_md;
use crate::perm::Permutation;
use crate::pipes::{is_restricted, toric_perm, trace_sigma};

pub use crate::genfunc::counts::{poly_bernoulli, single_cycle_count};

/// Default cap on `m * n` for exhaustive enumeration.
pub const DEFAULT_MAX_CELLS: usize = 25;

fn check_limit(m: usize, n: usize, max_cells: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::EmptyShape { m, n });
    }
    if m * n > max_cells {
        return Err(Error::EnumerationLimit {
            cells: m * n,
            limit: max_cells,
        });
    }
    Ok(())
}

/// Depth-first generator of all `m x n` Cauchon diagrams.
///
/// Cells are decided in row-major order, white before black, so diagrams come
/// out in lexicographic order of their row-major cell sequence with white
/// first. A cell may only turn black when its column above or its row to the
/// left is still entirely black; since those cells are already decided, no
/// dead branch is ever explored. Memory is `O(m n)`.
#[derive(Debug, Clone)]
pub struct CauchonIter {
    m: usize,
    n: usize,
    cells: Vec<Color>,
    row_white: Vec<usize>,
    col_white: Vec<usize>,
    base: usize,
    pos: usize,
    started: bool,
    done: bool,
}

impl CauchonIter {
    /// Restricts generation to diagrams whose first cells (row-major) equal
    /// `prefix`. Distinct prefixes of equal length partition the output.
    pub fn with_prefix(m: usize, n: usize, prefix: &[Color], max_cells: usize) -> Result<Self> {
        check_limit(m, n, max_cells)?;
        if prefix.len() > m * n {
            return Err(Error::SizeMismatch {
                expected: m * n,
                found: prefix.len(),
            });
        }
        let mut it = Self {
            m,
            n,
            cells: vec![Color::White; m * n],
            row_white: vec![0; m],
            col_white: vec![0; n],
            base: prefix.len(),
            pos: 0,
            started: false,
            done: false,
        };
        for &color in prefix {
            if color == Color::Black && !it.black_allowed(it.pos) {
                it.done = true;
                break;
            }
            it.assign(color);
        }
        Ok(it)
    }

    fn black_allowed(&self, pos: usize) -> bool {
        let (r, c) = (pos / self.n, pos % self.n);
        self.col_white[c] == 0 || self.row_white[r] == 0
    }

    fn assign(&mut self, color: Color) {
        let (r, c) = (self.pos / self.n, self.pos % self.n);
        self.cells[self.pos] = color;
        if color == Color::White {
            self.row_white[r] += 1;
            self.col_white[c] += 1;
        }
        self.pos += 1;
    }

    fn unassign(&mut self) -> Color {
        self.pos -= 1;
        let (r, c) = (self.pos / self.n, self.pos % self.n);
        let color = self.cells[self.pos];
        if color == Color::White {
            self.row_white[r] -= 1;
            self.col_white[c] -= 1;
        }
        color
    }

    fn fill_white(&mut self) {
        while self.pos < self.cells.len() {
            self.assign(Color::White);
        }
    }

    fn emit(&self) -> Diagram {
        Diagram::new(self.m, self.n, self.cells.clone()).expect("shape checked")
    }
}

impl Iterator for CauchonIter {
    type Item = Diagram;

    fn next(&mut self) -> Option<Diagram> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill_white();
            return Some(self.emit());
        }
        while self.pos > self.base {
            let color = self.unassign();
            if color == Color::White && self.black_allowed(self.pos) {
                self.assign(Color::Black);
                self.fill_white();
                return Some(self.emit());
            }
        }
        self.done = true;
        None
    }
}

pub fn enum_cauchon(m: usize, n: usize) -> Result<CauchonIter> {
    enum_cauchon_limited(m, n, DEFAULT_MAX_CELLS)
}

pub fn enum_cauchon_limited(m: usize, n: usize, max_cells: usize) -> Result<CauchonIter> {
    CauchonIter::with_prefix(m, n, &[], max_cells)
}

/// All `2^len` first-row color prefixes, for splitting enumeration work.
pub fn row_prefixes(len: usize) -> Vec<Vec<Color>> {
    (0..1u32 << len)
        .map(|mask| {
            (0..len)
                .map(|i| if mask >> i & 1 == 1 { Color::Black } else { Color::White })
                .collect()
        })
        .collect()
}

/// How a stratum dimension is computed for a single diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Even-length cycles of the toric permutation.
    Cycles,
    /// Kernel dimension of `M(D)`.
    Kernel,
}

impl Method {
    pub fn dimension(self, d: &Diagram) -> usize {
        match self {
            Method::Cycles => toric_perm(d).cycles().odd_cycle_count(),
            Method::Kernel => build_md(&d.white_labeling())
                .kernel_dim()
                .expect("M(D) is square"),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Cycles => "cycles",
            Method::Kernel => "kernel",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cycles" => Ok(Method::Cycles),
            "kernel" => Ok(Method::Kernel),
            _ => Err(Error::InvalidArgument(format!("unknown method {s:?}"))),
        }
    }
}

/// Number of `m x n` strata of each dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumTally {
    pub m: usize,
    pub n: usize,
    counts: BTreeMap<usize, BigUint>,
}

impl StratumTally {
    pub fn new(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            counts: BTreeMap::new(),
        }
    }

    /// Builds a tally from `counts[d]`, skipping zeros.
    pub fn from_counts(m: usize, n: usize, counts: impl IntoIterator<Item = (usize, BigUint)>) -> Self {
        let counts = counts.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { m, n, counts }
    }

    pub fn record(&mut self, dimension: usize) {
        *self.counts.entry(dimension).or_insert_with(BigUint::zero) += BigUint::one();
    }

    pub fn get(&self, dimension: usize) -> BigUint {
        self.counts.get(&dimension).cloned().unwrap_or_default()
    }

    /// Nonzero counts by ascending dimension.
    pub fn counts(&self) -> &BTreeMap<usize, BigUint> {
        &self.counts
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn max_dimension(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }
}

impl AddAssign<&StratumTally> for StratumTally {
    fn add_assign(&mut self, rhs: &StratumTally) {
        assert_eq!((self.m, self.n), (rhs.m, rhs.n), "tallies of different shapes");
        for (&d, c) in &rhs.counts {
            *self.counts.entry(d).or_insert_with(BigUint::zero) += c;
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TallyJson {
    m: usize,
    n: usize,
    counts: BTreeMap<String, String>,
    total: String,
}

impl Serialize for StratumTally {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Keys compare as strings in the JSON map; order numerically instead.
        let mut counts = serde_json::Map::new();
        for (d, c) in &self.counts {
            counts.insert(d.to_string(), serde_json::Value::String(c.to_string()));
        }
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("StratumTally", 4)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("counts", &counts)?;
        st.serialize_field("total", &self.total().to_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for StratumTally {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = TallyJson::deserialize(d)?;
        let mut counts = BTreeMap::new();
        for (k, v) in raw.counts {
            let dim: usize = k.parse().map_err(D::Error::custom)?;
            let count: BigUint = v.parse().map_err(D::Error::custom)?;
            counts.insert(dim, count);
        }
        let tally = StratumTally::from_counts(raw.m, raw.n, counts);
        let total: BigUint = raw.total.parse().map_err(D::Error::custom)?;
        if tally.total() != total {
            return Err(D::Error::custom("total does not match counts"));
        }
        Ok(tally)
    }
}

pub fn tally_diagrams(m: usize, n: usize, diagrams: impl Iterator<Item = Diagram>, method: Method) -> StratumTally {
    let mut tally = StratumTally::new(m, n);
    for d in diagrams {
        tally.record(method.dimension(&d));
    }
    tally
}

pub fn tally_dimensions(m: usize, n: usize, method: Method) -> Result<StratumTally> {
    tally_dimensions_limited(m, n, method, DEFAULT_MAX_CELLS)
}

pub fn tally_dimensions_limited(m: usize, n: usize, method: Method, max_cells: usize) -> Result<StratumTally> {
    Ok(tally_diagrams(m, n, enum_cauchon_limited(m, n, max_cells)?, method))
}

/// Same result as [`tally_dimensions_limited`], with the search split over
/// cell prefixes and run on the rayon pool.
pub fn tally_dimensions_par(m: usize, n: usize, method: Method, max_cells: usize) -> Result<StratumTally> {
    check_limit(m, n, max_cells)?;
    let prefixes = row_prefixes((m * n).min(10));
    let parts = prefixes
        .par_iter()
        .map(|p| {
            CauchonIter::with_prefix(m, n, p, max_cells).map(|it| tally_diagrams(m, n, it, method))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = StratumTally::new(m, n);
    for part in &parts {
        total += part;
    }
    Ok(total)
}

/// The Cauchon diagram whose pipe dream realizes `sigma`, found by search.
/// `None` when no `m x n` Cauchon diagram does, which includes every
/// permutation that is not restricted.
pub fn diagram_for_restricted(sigma: &Permutation, m: usize, n: usize) -> Result<Option<Diagram>> {
    diagram_for_restricted_limited(sigma, m, n, DEFAULT_MAX_CELLS)
}

pub fn diagram_for_restricted_limited(
    sigma: &Permutation,
    m: usize,
    n: usize,
    max_cells: usize,
) -> Result<Option<Diagram>> {
    check_limit(m, n, max_cells)?;
    if !is_restricted(sigma, m, n)? {
        return Ok(None);
    }
    Ok(enum_cauchon_limited(m, n, max_cells)?.find(|d| trace_sigma(d) == *sigma))
}
