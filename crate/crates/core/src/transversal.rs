//! Transversals, disjoint-transversal decompositions and transversal representations.

use std::collections::HashSet;

use crate::exact_cover::ExactCover;
use crate::square::{Square, SquareError};

/// One cell per row and column of a square, stored by column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transversal {
    row_of_column: Vec<u8>,
    symbols: Vec<u8>,
}

impl Transversal {
    /// Builds the (possibly generalized) transversal of `square` selecting row
    /// `row_of_column[j]` in column `j`.
    pub fn new(square: &Square, row_of_column: Vec<u8>) -> Result<Self, SquareError> {
        let n = square.order();
        if row_of_column.len() != n {
            return Err(SquareError::Shape {
                expected: n,
                found: row_of_column.len(),
            });
        }
        let mut used = 0u32;
        for &r in &row_of_column {
            if r as usize >= n || used & (1 << r) != 0 {
                return Err(SquareError::InvalidDecomposition(format!(
                    "{row_of_column:?} does not pick one cell per row"
                )));
            }
            used |= 1 << r;
        }
        let symbols = row_of_column
            .iter()
            .enumerate()
            .map(|(j, &r)| square.get(r as usize, j) as u8)
            .collect();
        Ok(Transversal {
            row_of_column,
            symbols,
        })
    }

    pub fn row_of_column(&self) -> &[u8] {
        &self.row_of_column
    }

    /// The row representation: symbols listed by column.
    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// True when the symbols are pairwise distinct.
    pub fn is_proper(&self) -> bool {
        let mask = self.symbols.iter().fold(0u32, |m, &s| m | 1 << s);
        mask.count_ones() as usize == self.symbols.len()
    }

    pub fn is_disjoint(&self, other: &Transversal) -> bool {
        self.row_of_column
            .iter()
            .zip(&other.row_of_column)
            .all(|(a, b)| a != b)
    }
}

/// All transversals of `square` in lexicographic order of `row_of_column`.
/// With `generalized`, the distinct-symbol requirement is dropped.
pub fn enumerate_transversals(square: &Square, generalized: bool) -> Vec<Transversal> {
    let n = square.order();
    let mut out = Vec::new();
    let mut rows = vec![0u8; n];
    backtrack(square, generalized, 0, 0, 0, &mut rows, &mut out);
    out
}

/// Number of proper transversals.
pub fn count_transversals(square: &Square) -> usize {
    enumerate_transversals(square, false).len()
}

fn backtrack(
    square: &Square,
    generalized: bool,
    col: usize,
    used_rows: u16,
    used_symbols: u16,
    rows: &mut Vec<u8>,
    out: &mut Vec<Transversal>,
) {
    let n = square.order();
    if col == n {
        let symbols = rows
            .iter()
            .enumerate()
            .map(|(j, &r)| square.get(r as usize, j) as u8)
            .collect();
        out.push(Transversal {
            row_of_column: rows.clone(),
            symbols,
        });
        return;
    }
    for r in 0..n {
        if used_rows & (1 << r) != 0 {
            continue;
        }
        let s = square.get(r, col);
        if !generalized && used_symbols & (1 << s) != 0 {
            continue;
        }
        rows[col] = r as u8;
        backtrack(
            square,
            generalized,
            col + 1,
            used_rows | 1 << r,
            used_symbols | 1 << s,
            rows,
            out,
        );
    }
}

fn cover_problem(square: &Square, transversals: &[Transversal]) -> ExactCover {
    let n = square.order();
    let options: Vec<Vec<usize>> = transversals
        .iter()
        .map(|t| {
            t.row_of_column
                .iter()
                .enumerate()
                .map(|(j, &r)| r as usize * n + j)
                .collect()
        })
        .collect();
    ExactCover::new(n * n, &options)
}

/// Counts unordered partitions of the cells into `n` disjoint transversals,
/// stopping at `limit` when given.
pub fn count_mate_decompositions(square: &Square, limit: Option<usize>) -> usize {
    let transversals = enumerate_transversals(square, false);
    if transversals.is_empty() {
        return 0;
    }
    cover_problem(square, &transversals).count(limit)
}

/// Lists up to `limit` disjoint-transversal decompositions.
pub fn mate_decompositions(square: &Square, limit: Option<usize>) -> Vec<Vec<Transversal>> {
    let transversals = enumerate_transversals(square, false);
    let mut out = Vec::new();
    if transversals.is_empty() {
        return out;
    }
    cover_problem(square, &transversals).solve(limit, |chosen| {
        let mut parts: Vec<Transversal> = chosen.iter().map(|&i| transversals[i].clone()).collect();
        parts.sort();
        out.push(parts);
    });
    out
}

/// Stacks the row representations of a disjoint decomposition into a square.
pub fn trp_from_decomposition(square: &Square, parts: &[Transversal]) -> Result<Square, SquareError> {
    let n = square.order();
    if parts.len() != n {
        return Err(SquareError::InvalidDecomposition(format!(
            "expected {n} transversals, got {}",
            parts.len()
        )));
    }
    let mut covered = vec![false; n * n];
    let mut rows = Vec::with_capacity(n);
    for t in parts {
        // Recompute from the source square rather than trusting stored symbols.
        let t = Transversal::new(square, t.row_of_column.clone())?;
        for (j, &r) in t.row_of_column.iter().enumerate() {
            let cell = r as usize * n + j;
            if covered[cell] {
                return Err(SquareError::InvalidDecomposition(format!(
                    "cell ({r}, {j}) covered twice"
                )));
            }
            covered[cell] = true;
        }
        rows.push(t.symbols);
    }
    Square::from_rows(&rows)
}

/// Number of row representations that are transversals of both squares.
pub fn common_transversals(p: &Square, q: &Square) -> Result<usize, SquareError> {
    if p.order() != q.order() {
        return Err(SquareError::OrderMismatch {
            left: p.order(),
            right: q.order(),
        });
    }
    let of_p: HashSet<Vec<u8>> = enumerate_transversals(p, false)
        .into_iter()
        .map(|t| t.symbols)
        .collect();
    Ok(enumerate_transversals(q, false)
        .into_iter()
        .filter(|t| of_p.contains(&t.symbols))
        .count())
}
