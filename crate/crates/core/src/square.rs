//! Column-Latin and Latin squares and the column-wise permutation algebra on them.
//!
//! A [`Square`] is an immutable `n x n` array of symbols `0..n`. Column-Latin and
//! Latin structure is not implied by the type; use the predicates to classify a value.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported order. Row and symbol sets must fit in a `u16` mask.
pub const MAX_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SquareError {
    #[error("order {0} is outside 1..={MAX_ORDER}")]
    InvalidOrder(usize),
    #[error("expected {expected} cells, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("symbol {symbol} at ({row}, {col}) is not below the order {order}")]
    SymbolOutOfRange {
        row: usize,
        col: usize,
        symbol: usize,
        order: usize,
    },
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("square is not column-Latin")]
    NotColumnLatin,
    #[error("square is not Latin")]
    NotLatin,
    #[error("squares are not orthogonal")]
    NotOrthogonal,
    #[error("squares do not form a transversal representation pair")]
    NotTrp,
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A bijection on `0..n`; `image[i]` is where `i` maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<u8>,
}

impl Permutation {
    pub fn identity(order: usize) -> Self {
        Permutation {
            image: (0..order as u8).collect(),
        }
    }

    pub fn from_image(image: Vec<u8>) -> Result<Self, SquareError> {
        let n = image.len();
        if n == 0 || n > MAX_ORDER {
            return Err(SquareError::InvalidOrder(n));
        }
        let mut seen = 0u32;
        for &x in &image {
            if x as usize >= n || seen & (1 << x) != 0 {
                return Err(SquareError::Parse(format!("{image:?} is not a permutation")));
            }
            seen |= 1 << x;
        }
        Ok(Permutation { image })
    }

    pub fn order(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i] as usize
    }

    pub fn image(&self) -> &[u8] {
        &self.image
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { image: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.order(), other.order());
        Permutation {
            image: other.image.iter().map(|&x| self.image[x as usize]).collect(),
        }
    }
}

/// An `n x n` array of symbols in `0..n`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    order: usize,
    cells: Vec<u8>,
}

impl Square {
    /// Builds a square from rows, checking shape and symbol range.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, SquareError> {
        let order = rows.len();
        if order == 0 || order > MAX_ORDER {
            return Err(SquareError::InvalidOrder(order));
        }
        let mut cells = Vec::with_capacity(order * order);
        for row in rows {
            let row = row.as_ref();
            if row.len() != order {
                return Err(SquareError::Shape {
                    expected: order,
                    found: row.len(),
                });
            }
            cells.extend_from_slice(row);
        }
        Self::from_cells(order, cells)
    }

    pub fn from_cells(order: usize, cells: Vec<u8>) -> Result<Self, SquareError> {
        if order == 0 || order > MAX_ORDER {
            return Err(SquareError::InvalidOrder(order));
        }
        if cells.len() != order * order {
            return Err(SquareError::Shape {
                expected: order * order,
                found: cells.len(),
            });
        }
        if let Some(pos) = cells.iter().position(|&s| s as usize >= order) {
            return Err(SquareError::SymbolOutOfRange {
                row: pos / order,
                col: pos % order,
                symbol: cells[pos] as usize,
                order,
            });
        }
        Ok(Square { order, cells })
    }

    /// Builds a square from a cell function. Panics if a symbol is out of range.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        assert!((1..=MAX_ORDER).contains(&order), "invalid order {order}");
        let mut cells = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                let s = f(i, j);
                assert!(s < order, "symbol {s} out of range at ({i}, {j})");
                cells.push(s as u8);
            }
        }
        Square { order, cells }
    }

    /// The square `E` with `E[i, j] = i`: every column is the identity permutation.
    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, _| i)
    }

    /// The cyclic Latin square `C[i, j] = (i + j) mod n`.
    pub fn cyclic(order: usize) -> Self {
        Self::from_fn(order, |i, j| (i + j) % order)
    }

    /// Builds a column-Latin square from its column permutations.
    pub fn from_columns(columns: &[Permutation]) -> Result<Self, SquareError> {
        let n = columns.len();
        if n == 0 || n > MAX_ORDER {
            return Err(SquareError::InvalidOrder(n));
        }
        if let Some(c) = columns.iter().find(|c| c.order() != n) {
            return Err(SquareError::OrderMismatch {
                left: n,
                right: c.order(),
            });
        }
        Ok(Self::from_fn(n, |i, j| columns[j].apply(i)))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.order + col] as usize
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.cells[row * self.order..(row + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.cells.chunks(self.order)
    }

    pub fn column(&self, col: usize) -> Vec<u8> {
        (0..self.order).map(|i| self.cells[i * self.order + col]).collect()
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.rows().map(<[u8]>::to_vec).collect()
    }

    /// Returns a copy with one cell replaced.
    pub fn with_cell(&self, row: usize, col: usize, symbol: usize) -> Result<Self, SquareError> {
        let mut cells = self.cells.clone();
        cells[row * self.order + col] = symbol as u8;
        Self::from_cells(self.order, cells)
    }

    /// The column permutation `c_j` (maps row index to symbol). Requires column `j` to be a permutation.
    pub fn column_permutation(&self, col: usize) -> Result<Permutation, SquareError> {
        Permutation::from_image(self.column(col)).map_err(|_| SquareError::NotColumnLatin)
    }

    fn full_mask(&self) -> u32 {
        (1u32 << self.order) - 1
    }

    pub fn is_column_latin(&self) -> bool {
        let n = self.order;
        (0..n).all(|j| {
            let mask = (0..n).fold(0u32, |m, i| m | 1 << self.get(i, j));
            mask == self.full_mask()
        })
    }

    pub fn is_row_latin(&self) -> bool {
        self.rows()
            .all(|row| row.iter().fold(0u32, |m, &s| m | 1 << s) == self.full_mask())
    }

    pub fn is_latin(&self) -> bool {
        self.is_row_latin() && self.is_column_latin()
    }

    fn check_same_order(&self, other: &Square) -> Result<(), SquareError> {
        if self.order != other.order {
            return Err(SquareError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    /// Column-wise composition `FG`: `(FG)[i, j] = F[G[i, j], j]`.
    pub fn compose(&self, g: &Square) -> Result<Square, SquareError> {
        self.check_same_order(g)?;
        if !self.is_column_latin() || !g.is_column_latin() {
            return Err(SquareError::NotColumnLatin);
        }
        Ok(Square::from_fn(self.order, |i, j| self.get(g.get(i, j), j)))
    }

    /// Inverts every column permutation.
    pub fn column_inverse(&self) -> Result<Square, SquareError> {
        if !self.is_column_latin() {
            return Err(SquareError::NotColumnLatin);
        }
        let n = self.order;
        let mut cells = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                cells[self.get(i, j) * n + j] = i as u8;
            }
        }
        Ok(Square { order: n, cells })
    }

    /// Orthogonality: all `n²` superimposed symbol pairs are distinct.
    pub fn is_orthogonal(&self, other: &Square) -> Result<bool, SquareError> {
        self.check_same_order(other)?;
        let n = self.order;
        let mut seen = vec![false; n * n];
        for (&a, &b) in self.cells.iter().zip(&other.cells) {
            let key = a as usize * n + b as usize;
            if seen[key] {
                return Ok(false);
            }
            seen[key] = true;
        }
        Ok(true)
    }

    /// Transversal representation: no row of `self` agrees with any row of
    /// `other` in two or more columns. Symmetric in its arguments.
    pub fn is_trp(&self, other: &Square) -> Result<bool, SquareError> {
        self.check_same_order(other)?;
        Ok(self.rows().all(|a| {
            other
                .rows()
                .all(|b| a.iter().zip(b).filter(|(x, y)| x == y).count() <= 1)
        }))
    }

    /// Applies row, column and symbol permutations: the result `R` satisfies
    /// `R[rows(i), cols(j)] = symbols(self[i, j])`.
    pub fn permuted(&self, rows: &Permutation, cols: &Permutation, symbols: &Permutation) -> Square {
        let n = self.order;
        let mut cells = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                cells[rows.apply(i) * n + cols.apply(j)] = symbols.apply(self.get(i, j)) as u8;
            }
        }
        Square { order: n, cells }
    }

    /// Serializes to the text format: `n` on the first line, then `n` rows.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses the text format. Blank lines and lines starting with `#` or `c ` are ignored.
    pub fn parse_text(text: &str) -> Result<Square, SquareError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("c "));
        let header = lines
            .next()
            .ok_or_else(|| SquareError::Parse("missing order line".into()))?;
        let order: usize = header
            .parse()
            .map_err(|_| SquareError::Parse(format!("bad order line {header:?}")))?;
        if order == 0 || order > MAX_ORDER {
            return Err(SquareError::InvalidOrder(order));
        }
        let mut rows = Vec::with_capacity(order);
        for _ in 0..order {
            let line = lines
                .next()
                .ok_or_else(|| SquareError::Parse(format!("expected {order} rows")))?;
            let row = parse_row(line)?;
            rows.push(row);
        }
        if let Some(extra) = lines.next() {
            return Err(SquareError::Parse(format!("trailing content {extra:?}")));
        }
        Square::from_rows(&rows)
    }
}

fn parse_row(line: &str) -> Result<Vec<u8>, SquareError> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u8>()
                .map_err(|_| SquareError::Parse(format!("bad symbol {tok:?}")))
        })
        .collect()
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order)?;
        for row in self.rows() {
            let mut first = true;
            for s in row {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{s}")?;
                first = false;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Square {
    type Err = SquareError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Square::parse_text(s)
    }
}

#[derive(Serialize, Deserialize)]
struct SquareJson {
    order: usize,
    cells: Vec<Vec<u8>>,
}

impl Serialize for Square {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SquareJson {
            order: self.order,
            cells: self.to_rows(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Square {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = SquareJson::deserialize(deserializer)?;
        if raw.cells.len() != raw.order {
            return Err(serde::de::Error::custom(format!(
                "order {} but {} rows",
                raw.order,
                raw.cells.len()
            )));
        }
        Square::from_rows(&raw.cells).map_err(serde::de::Error::custom)
    }
}
