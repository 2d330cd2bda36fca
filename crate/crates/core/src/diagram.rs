//! Black/white grids and the Cauchon condition.
//!
//! Rows are indexed top to bottom and columns left to right, both from 0.
//! "Above" means a smaller row index in the same column and "left" means a
//! smaller column index in the same row.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn as_char(self) -> char {
        match self {
            Color::Black => '#',
            Color::White => '.',
        }
    }

    pub fn from_char(ch: char) -> Option<Self> {
        match ch {
            '#' => Some(Color::Black),
            '.' => Some(Color::White),
            _ => None,
        }
    }
}

/// An `m x n` grid of black and white squares.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    m: usize,
    n: usize,
    cells: Vec<Color>,
}

impl Diagram {
    /// Builds a diagram from row-major cells.
    pub fn new(m: usize, n: usize, cells: Vec<Color>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::EmptyShape { m, n });
        }
        if cells.len() != m * n {
            return Err(Error::CellCount {
                expected: m * n,
                found: cells.len(),
            });
        }
        Ok(Self { m, n, cells })
    }

    pub fn from_fn(m: usize, n: usize, mut f: impl FnMut(usize, usize) -> Color) -> Result<Self> {
        let cells = (0..m * n).map(|idx| f(idx / n.max(1), idx % n.max(1))).collect();
        Self::new(m, n, cells)
    }

    pub fn filled(m: usize, n: usize, color: Color) -> Result<Self> {
        Self::new(m, n, vec![color; m * n])
    }

    pub fn all_black(m: usize, n: usize) -> Result<Self> {
        Self::filled(m, n, Color::Black)
    }

    pub fn all_white(m: usize, n: usize) -> Result<Self> {
        Self::filled(m, n, Color::White)
    }

    /// Decodes the low `m * n` bits of `mask` in row-major order, a set bit
    /// meaning black.
    pub fn from_mask(m: usize, n: usize, mask: u64) -> Result<Self> {
        if m * n > 64 {
            return Err(Error::InvalidArgument(format!(
                "{m}x{n} does not fit in a 64-bit mask"
            )));
        }
        Self::from_fn(m, n, |r, c| {
            if mask >> (r * n + c) & 1 == 1 {
                Color::Black
            } else {
                Color::White
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Color] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> Color {
        self.cells[row * self.n + col]
    }

    pub fn is_white(&self, row: usize, col: usize) -> bool {
        self.get(row, col) == Color::White
    }

    pub fn is_black(&self, row: usize, col: usize) -> bool {
        self.get(row, col) == Color::Black
    }

    pub fn white_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c == Color::White).count()
    }

    /// Every black square has only black squares strictly above it, or only
    /// black squares strictly to its left. An empty side counts as all black.
    pub fn is_cauchon(&self) -> bool {
        (0..self.m).all(|r| {
            (0..self.n).all(|c| {
                self.is_white(r, c)
                    || (0..r).all(|rr| self.is_black(rr, c))
                    || (0..c).all(|cc| self.is_black(r, cc))
            })
        })
    }

    pub fn transpose(&self) -> Self {
        let cells = (0..self.n)
            .flat_map(|c| (0..self.m).map(move |r| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect();
        Self {
            m: self.n,
            n: self.m,
            cells,
        }
    }

    pub fn white_labeling(&self) -> WhiteLabeling {
        WhiteLabeling::new(self)
    }

    pub fn row_string(&self, row: usize) -> String {
        self.cells[row * self.n..(row + 1) * self.n]
            .iter()
            .map(|c| c.as_char())
            .collect()
    }

    /// Rows joined by `\n`, no trailing newline.
    pub fn to_text(&self) -> String {
        (0..self.m)
            .map(|r| self.row_string(r))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.strip_suffix('\n').unwrap_or(text);
        let text = text.strip_suffix('\r').unwrap_or(text);
        if text.is_empty() {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: "empty input".into(),
            });
        }
        let mut width = None;
        let mut cells = Vec::new();
        let mut m = 0;
        for (li, line) in text.split('\n').enumerate() {
            let line = line.strip_suffix('\r').unwrap_or(line);
            let mut len = 0;
            for (ci, ch) in line.chars().enumerate() {
                let color = Color::from_char(ch).ok_or_else(|| Error::Parse {
                    line: li + 1,
                    column: ci + 1,
                    message: format!("illegal character {ch:?}"),
                })?;
                cells.push(color);
                len += 1;
            }
            match width {
                None if len == 0 => {
                    return Err(Error::Parse {
                        line: li + 1,
                        column: 1,
                        message: "empty row".into(),
                    })
                }
                None => width = Some(len),
                Some(w) if w != len => {
                    return Err(Error::Parse {
                        line: li + 1,
                        column: len.min(w) + 1,
                        message: format!("ragged rows: expected {w} cells, found {len}"),
                    })
                }
                Some(_) => {}
            }
            m += 1;
        }
        Self::new(m, width.unwrap_or(0), cells)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    m: usize,
    n: usize,
    rows: Vec<String>,
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson {
            m: self.m,
            n: self.n,
            rows: (0..self.m).map(|r| self.row_string(r)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = DiagramJson::deserialize(d)?;
        let diagram = Diagram::parse(&raw.rows.join("\n")).map_err(D::Error::custom)?;
        if diagram.m != raw.m || diagram.n != raw.n {
            return Err(D::Error::custom(format!(
                "declared shape {}x{} does not match rows ({}x{})",
                raw.m, raw.n, diagram.m, diagram.n
            )));
        }
        Ok(diagram)
    }
}

/// Labels of the white squares strictly above, right, below and left of a
/// given white square, each in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Regions<'a> {
    pub above: &'a [usize],
    pub right: &'a [usize],
    pub below: &'a [usize],
    pub left: &'a [usize],
}

/// Row-major labeling of the white squares: label `k` (0-based) is the
/// `k`-th white square met when reading rows top to bottom, each left to
/// right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhiteLabeling {
    m: usize,
    n: usize,
    positions: Vec<(usize, usize)>,
    by_cell: Vec<Option<usize>>,
    // Labels per row and per column, both in increasing order.
    row_members: Vec<Vec<usize>>,
    col_members: Vec<Vec<usize>>,
}

impl WhiteLabeling {
    pub fn new(d: &Diagram) -> Self {
        let mut positions = Vec::new();
        let mut by_cell = vec![None; d.m * d.n];
        let mut row_members = vec![Vec::new(); d.m];
        let mut col_members = vec![Vec::new(); d.n];
        for r in 0..d.m {
            for c in 0..d.n {
                if d.is_white(r, c) {
                    let label = positions.len();
                    positions.push((r, c));
                    by_cell[r * d.n + c] = Some(label);
                    row_members[r].push(label);
                    col_members[c].push(label);
                }
            }
        }
        Self {
            m: d.m,
            n: d.n,
            positions,
            by_cell,
            row_members,
            col_members,
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    pub fn position(&self, label: usize) -> Result<(usize, usize)> {
        self.positions
            .get(label)
            .copied()
            .ok_or(Error::InvalidLabel {
                label,
                count: self.len(),
            })
    }

    pub fn label_at(&self, row: usize, col: usize) -> Option<usize> {
        if row >= self.m || col >= self.n {
            return None;
        }
        self.by_cell[row * self.n + col]
    }

    /// White labels in `row`, left to right.
    pub fn row(&self, row: usize) -> &[usize] {
        &self.row_members[row]
    }

    /// White labels in `col`, top to bottom.
    pub fn column(&self, col: usize) -> &[usize] {
        &self.col_members[col]
    }

    /// White squares strictly above, right, below and left of `label`.
    pub fn regions(&self, label: usize) -> Result<Regions<'_>> {
        let (r, c) = self.position(label)?;
        let row = self.row(r);
        let col = self.column(c);
        let in_row = row.binary_search(&label).expect("label lies in its own row");
        let in_col = col.binary_search(&label).expect("label lies in its own column");
        Ok(Regions {
            above: &col[..in_col],
            right: &row[in_row + 1..],
            below: &col[in_col + 1..],
            left: &row[..in_row],
        })
    }
}
