//! Colour classes, transversal types and square types for order-10 transversal
//! representations of a Latin square with a 4x4 Latin subsquare in its
//! lower-right corner.
//!
//! Geometry: symbols `0..4` fill the subsquare and are coloured white; columns
//! `0..6` are the left block, columns `6..10` the subsquare columns. A row of a
//! transversal representation has type `p_k` when it holds `k` white cells in the
//! subsquare columns and `2k - 2` dark cells in the left block.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::square::Square;

pub const ORDER: usize = 10;
/// Symbols `0..WHITE_SYMBOLS` are white.
pub const WHITE_SYMBOLS: usize = 4;
/// Columns `0..LEFT_COLUMNS` may hold dark cells; the rest may hold white subsquare cells.
pub const LEFT_COLUMNS: usize = 6;
/// Dark cells in each left-block column.
pub const DARK_PER_COLUMN: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("transversal type p{0} is impossible (types are p1..p4)")]
    InvalidRowType(usize),
    #[error("colouring disagrees with the square at ({row}, {col})")]
    InconsistentColouring { row: usize, col: usize },
    #[error("row {row} has {whites} white subsquare cells but {darks} dark cells (expected {expected})")]
    DarkCount {
        row: usize,
        whites: usize,
        darks: usize,
        expected: usize,
    },
    #[error("row-type histogram {0:?} matches no square type")]
    NoMatchingType([usize; 4]),
    #[error("expected order {ORDER}, found {0}")]
    WrongOrder(usize),
    #[error("unknown pair case {0:?}")]
    UnknownCase(String),
    #[error("bad colouring: {0}")]
    BadColouring(String),
}

/// The cyclic group table of order 4, which has no transversals.
pub fn omega1() -> Square {
    Square::from_fn(4, |i, j| (i + j) % 4)
}

/// The Klein four-group table.
pub fn omega2() -> Square {
    Square::from_fn(4, |i, j| i ^ j)
}

/// Which subsquare `L` is taken to contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subsquare {
    Omega1,
    Omega2,
}

impl Subsquare {
    pub fn square(self) -> Square {
        match self {
            Subsquare::Omega1 => omega1(),
            Subsquare::Omega2 => omega2(),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Subsquare::Omega1 => 1,
            Subsquare::Omega2 => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Colour {
    White,
    Light,
    Dark,
}

impl Colour {
    pub fn as_char(self) -> char {
        match self {
            Colour::White => 'W',
            Colour::Light => 'L',
            Colour::Dark => 'D',
        }
    }

    pub fn from_char(c: char) -> Option<Colour> {
        match c.to_ascii_uppercase() {
            'W' => Some(Colour::White),
            'L' => Some(Colour::Light),
            'D' => Some(Colour::Dark),
            _ => None,
        }
    }
}

/// Explicit per-cell colours of an order-10 square.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Colouring {
    colours: Vec<Colour>,
}

impl Colouring {
    pub fn new(colours: Vec<Colour>) -> Result<Self, ModelError> {
        if colours.len() != ORDER * ORDER {
            return Err(ModelError::BadColouring(format!(
                "expected {} cells, found {}",
                ORDER * ORDER,
                colours.len()
            )));
        }
        Ok(Colouring { colours })
    }

    /// Parses rows like `"WWWLLLWLLL"`.
    pub fn from_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self, ModelError> {
        if rows.len() != ORDER {
            return Err(ModelError::BadColouring(format!("expected {ORDER} rows")));
        }
        let mut colours = Vec::with_capacity(ORDER * ORDER);
        for row in rows {
            let row = row.as_ref();
            if row.chars().count() != ORDER {
                return Err(ModelError::BadColouring(format!("bad row {row:?}")));
            }
            for c in row.chars() {
                colours.push(
                    Colour::from_char(c)
                        .ok_or_else(|| ModelError::BadColouring(format!("bad colour {c:?}")))?,
                );
            }
        }
        Ok(Colouring { colours })
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.colours
            .chunks(ORDER)
            .map(|row| row.iter().map(|c| c.as_char()).collect())
            .collect()
    }

    pub fn get(&self, row: usize, col: usize) -> Colour {
        self.colours[row * ORDER + col]
    }

    pub fn with_cell(&self, row: usize, col: usize, colour: Colour) -> Colouring {
        let mut colours = self.colours.clone();
        colours[row * ORDER + col] = colour;
        Colouring { colours }
    }

    /// First cell where the colouring contradicts the square: whites must be
    /// exactly the symbols below four, and dark cells only appear in the left block.
    pub fn inconsistency(&self, square: &Square) -> Option<(usize, usize)> {
        if square.order() != ORDER {
            return Some((0, 0));
        }
        (0..ORDER)
            .flat_map(|i| (0..ORDER).map(move |j| (i, j)))
            .find(|&(i, j)| {
                let white_symbol = square.get(i, j) < WHITE_SYMBOLS;
                match self.get(i, j) {
                    Colour::White => !white_symbol,
                    Colour::Light => white_symbol,
                    Colour::Dark => white_symbol || j >= LEFT_COLUMNS,
                }
            })
    }

    pub fn dark_in_column(&self, col: usize) -> usize {
        (0..ORDER).filter(|&i| self.get(i, col) == Colour::Dark).count()
    }
}

impl fmt::Display for Colouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_strings() {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl Serialize for Colouring {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Colouring {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<String>::deserialize(deserializer)?;
        Colouring::from_strings(&rows).map_err(serde::de::Error::custom)
    }
}

/// Transversal type `p_k`, `k` in `1..=4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowType(u8);

impl RowType {
    pub fn new(k: usize) -> Result<Self, ModelError> {
        if (1..=4).contains(&k) {
            Ok(RowType(k as u8))
        } else {
            Err(ModelError::InvalidRowType(k))
        }
    }

    /// White cells among the subsquare columns.
    pub fn whites(self) -> usize {
        self.0 as usize
    }

    /// Dark cells among the left-block columns.
    pub fn darks(self) -> usize {
        2 * self.0 as usize - 2
    }
}

/// `2k - 2`, the dark-cell count of a `p_k` row.
pub fn dark_count_for_type(k: usize) -> Result<usize, ModelError> {
    RowType::new(k).map(RowType::darks)
}

/// The seven square types, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SquareType {
    R,
    S,
    T,
    U,
    V,
    W,
    X,
}

impl SquareType {
    pub const ALL: [SquareType; 7] = [
        SquareType::R,
        SquareType::S,
        SquareType::T,
        SquareType::U,
        SquareType::V,
        SquareType::W,
        SquareType::X,
    ];

    /// Row-type histogram `(n1, n2, n3, n4)`.
    pub fn counts(self) -> [usize; 4] {
        match self {
            SquareType::R => [8, 0, 0, 2],
            SquareType::S => [7, 0, 3, 0],
            SquareType::T => [7, 1, 1, 1],
            SquareType::U => [6, 2, 2, 0],
            SquareType::V => [6, 3, 0, 1],
            SquareType::W => [5, 4, 1, 0],
            SquareType::X => [4, 6, 0, 0],
        }
    }

    pub fn label(self) -> char {
        "RSTUVWX".as_bytes()[self as usize] as char
    }

    pub fn from_label(c: char) -> Option<SquareType> {
        SquareType::ALL
            .into_iter()
            .find(|t| t.label() == c.to_ascii_uppercase())
    }

    pub fn from_counts(counts: [usize; 4]) -> Option<SquareType> {
        SquareType::ALL.into_iter().find(|t| t.counts() == counts)
    }

    /// Row types in nondecreasing order: the row-to-type assignment of the normal form.
    pub fn sorted_row_types(self) -> Vec<RowType> {
        self.counts()
            .iter()
            .enumerate()
            .flat_map(|(k, &c)| std::iter::repeat_n(RowType(k as u8 + 1), c))
            .collect()
    }
}

impl fmt::Display for SquareType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// All nonnegative solutions of `n1+n2+n3+n4 = 10`, `n1+2n2+3n3+4n4 = 16`,
/// ordered by decreasing `n1` then increasing `n2`, and labelled `R..X`.
pub fn solve_type_system() -> Vec<(SquareType, [usize; 4])> {
    let mut solutions = Vec::new();
    for n1 in 0..=ORDER {
        for n2 in 0..=ORDER - n1 {
            for n3 in 0..=ORDER - n1 - n2 {
                let n4 = ORDER - n1 - n2 - n3;
                if n1 + 2 * n2 + 3 * n3 + 4 * n4 == 16 {
                    solutions.push([n1, n2, n3, n4]);
                }
            }
        }
    }
    solutions.sort_by_key(|c| (std::cmp::Reverse(c[0]), c[1]));
    SquareType::ALL.into_iter().zip(solutions).collect()
}

/// An unordered pair of square types, stored with `first <= second`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairCase {
    pub first: SquareType,
    pub second: SquareType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Eliminated,
    Open,
}

const OPEN_CASES: [&str; 8] = ["SX", "UU", "UW", "UX", "VX", "WW", "WX", "XX"];

impl PairCase {
    pub fn new(a: SquareType, b: SquareType) -> Self {
        PairCase {
            first: a.min(b),
            second: a.max(b),
        }
    }

    /// Two-letter identifier such as `"UX"`.
    pub fn id(&self) -> String {
        format!("{}{}", self.first, self.second)
    }

    pub fn status(&self) -> CaseStatus {
        if OPEN_CASES.contains(&self.id().as_str()) {
            CaseStatus::Open
        } else {
            CaseStatus::Eliminated
        }
    }

    pub fn is_open(&self) -> bool {
        self.status() == CaseStatus::Open
    }
}

impl fmt::Display for PairCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.first, self.second)
    }
}

impl FromStr for PairCase {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.trim().chars();
        let (Some(a), Some(b), None) = (chars.next(), chars.next(), chars.next()) else {
            return Err(ModelError::UnknownCase(s.to_string()));
        };
        match (SquareType::from_label(a), SquareType::from_label(b)) {
            (Some(a), Some(b)) => Ok(PairCase::new(a, b)),
            _ => Err(ModelError::UnknownCase(s.to_string())),
        }
    }
}

impl Serialize for PairCase {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.id())
    }
}

impl<'de> Deserialize<'de> for PairCase {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The 28 unordered pair cases in type order.
pub fn all_pair_cases() -> Vec<PairCase> {
    let mut out = Vec::with_capacity(28);
    for (i, &a) in SquareType::ALL.iter().enumerate() {
        for &b in &SquareType::ALL[i..] {
            out.push(PairCase::new(a, b));
        }
    }
    out
}

/// Transversal type of one row, checked against the dark-cell count.
pub fn classify_row(square: &Square, colouring: &Colouring, row: usize) -> Result<RowType, ModelError> {
    if square.order() != ORDER {
        return Err(ModelError::WrongOrder(square.order()));
    }
    for col in 0..ORDER {
        let white_symbol = square.get(row, col) < WHITE_SYMBOLS;
        let ok = match colouring.get(row, col) {
            Colour::White => white_symbol,
            Colour::Light => !white_symbol,
            Colour::Dark => !white_symbol && col < LEFT_COLUMNS,
        };
        if !ok {
            return Err(ModelError::InconsistentColouring { row, col });
        }
    }
    let whites = (LEFT_COLUMNS..ORDER)
        .filter(|&j| colouring.get(row, j) == Colour::White)
        .count();
    let darks = (0..LEFT_COLUMNS)
        .filter(|&j| colouring.get(row, j) == Colour::Dark)
        .count();
    let row_type = RowType::new(whites)?;
    if darks != row_type.darks() {
        return Err(ModelError::DarkCount {
            row,
            whites,
            darks,
            expected: row_type.darks(),
        });
    }
    Ok(row_type)
}

/// Square type from the histogram of row types.
pub fn classify_square(square: &Square, colouring: &Colouring) -> Result<SquareType, ModelError> {
    let mut histogram = [0usize; 4];
    for row in 0..ORDER {
        histogram[classify_row(square, colouring, row)?.whites() - 1] += 1;
    }
    SquareType::from_counts(histogram).ok_or(ModelError::NoMatchingType(histogram))
}

/// The three admissible first rows of `P` in normal form, indexed by `P[0, 6]` in `3, 2, 1` order.
pub fn normal_form_first_rows() -> [[u8; ORDER]; 3] {
    [
        [0, 1, 2, 4, 5, 6, 3, 7, 8, 9],
        [0, 1, 3, 4, 5, 6, 2, 7, 8, 9],
        [0, 2, 3, 4, 5, 6, 1, 7, 8, 9],
    ]
}

/// A row of `square` whose subsquare-column entries pick two cells from the
/// same row of `omega`, which no transversal of `L` can do. Returns
/// `(row, omega_row, col_a, col_b)` for the first conflict found.
pub fn subsquare_conflict(square: &Square, omega: &Square) -> Option<(usize, usize, usize, usize)> {
    let n = square.order();
    let first = n - omega.order();
    for i in 0..n {
        for r in 0..omega.order() {
            for a in first..n {
                if square.get(i, a) != omega.get(r, a - first) {
                    continue;
                }
                for b in a + 1..n {
                    if square.get(i, b) == omega.get(r, b - first) {
                        return Some((i, r, a, b));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_system_reproduces_table() {
        let sols = solve_type_system();
        assert_eq!(sols.len(), 7);
        assert!(sols.contains(&(SquareType::R, [8, 0, 0, 2])));
        assert!(sols.contains(&(SquareType::X, [4, 6, 0, 0])));
        for (t, counts) in sols {
            assert_eq!(t.counts(), counts);
        }
    }

    #[test]
    fn dark_counts() {
        assert_eq!(dark_count_for_type(1), Ok(0));
        assert_eq!(dark_count_for_type(4), Ok(6));
        assert_eq!(dark_count_for_type(0), Err(ModelError::InvalidRowType(0)));
        assert!(dark_count_for_type(5).is_err());
    }

    #[test]
    fn pair_cases() {
        let cases = all_pair_cases();
        assert_eq!(cases.len(), 28);
        assert_eq!(cases.iter().filter(|c| c.is_open()).count(), 8);
        assert!("UU".parse::<PairCase>().unwrap().is_open());
        assert!(!"RR".parse::<PairCase>().unwrap().is_open());
        assert_eq!("XU".parse::<PairCase>().unwrap().id(), "UX");
        assert!("UY".parse::<PairCase>().is_err());
        assert!("UUU".parse::<PairCase>().is_err());
        assert!(cases.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn sorted_row_types_follow_counts() {
        let rows = SquareType::R.sorted_row_types();
        assert_eq!(rows.len(), 10);
        assert!(rows[..8].iter().all(|t| t.whites() == 1));
        assert!(rows[8..].iter().all(|t| t.whites() == 4));
        let x = SquareType::X.sorted_row_types();
        assert!(x[..4].iter().all(|t| t.whites() == 1) && x[4..].iter().all(|t| t.whites() == 2));
    }

    fn row_fixture(row: [u8; 10], colours: &str) -> (Square, Colouring) {
        // Only row 0 matters; other rows are filled with a Latin completion of the cyclic shift.
        let square = Square::from_fn(10, |i, j| if i == 0 { row[j] as usize } else { (row[j] as usize + i) % 10 });
        let mut rows = vec![colours.to_string()];
        for i in 1..10 {
            rows.push(
                (0..10)
                    .map(|j| if square.get(i, j) < 4 { 'W' } else { 'L' })
                    .collect(),
            );
        }
        (square, Colouring::from_strings(&rows).unwrap())
    }

    #[test]
    fn classify_row_examples() {
        let (s, c) = row_fixture([0, 1, 2, 4, 5, 6, 3, 7, 8, 9], "WWWLLLWLLL");
        assert_eq!(classify_row(&s, &c, 0).unwrap().whites(), 1);

        let (s, c) = row_fixture([4, 5, 6, 7, 8, 9, 0, 1, 2, 3], "DDDDDDWWWW");
        assert_eq!(classify_row(&s, &c, 0).unwrap().whites(), 4);

        let (s, c) = row_fixture([0, 1, 4, 5, 6, 7, 2, 3, 8, 9], "WWLLLLWWLL");
        assert!(matches!(
            classify_row(&s, &c, 0),
            Err(ModelError::DarkCount { whites: 2, darks: 0, .. })
        ));

        let (s, c) = row_fixture([0, 1, 2, 3, 4, 5, 6, 7, 8, 9], "WWWWLLLLLL");
        assert_eq!(classify_row(&s, &c, 0), Err(ModelError::InvalidRowType(0)));

        let c = c.with_cell(0, 0, Colour::Light);
        assert_eq!(
            classify_row(&s, &c, 0),
            Err(ModelError::InconsistentColouring { row: 0, col: 0 })
        );
    }

    #[test]
    fn classify_square_histograms() {
        assert_eq!(SquareType::from_counts([8, 0, 0, 2]), Some(SquareType::R));
        assert_eq!(SquareType::from_counts([5, 4, 1, 0]), Some(SquareType::W));
        assert_eq!(SquareType::from_counts([9, 0, 0, 1]), None);
    }

    #[test]
    fn omega_squares() {
        assert!(omega1().is_latin());
        assert!(omega2().is_latin());
        assert_eq!(omega1().row(0), &[0, 1, 2, 3]);
        assert_eq!(omega2().row(0), &[0, 1, 2, 3]);
        assert_eq!(omega2().row(1), &[1, 0, 3, 2]);
    }

    #[test]
    fn subsquare_conflict_detection() {
        // Row 0 holds 0 and 1 in columns 6 and 7, the first row of both subsquares.
        let row0 = [2, 3, 4, 5, 6, 7, 0, 1, 8, 9];
        let bad = Square::from_fn(10, |i, j| (row0[j] + i) % 10);
        assert_eq!(subsquare_conflict(&bad, &omega1()), Some((0, 0, 6, 7)));
    }

    #[test]
    fn colouring_text() {
        let rows: Vec<String> = (0..10).map(|_| "WWWLLLWLLL".to_string()).collect();
        let c = Colouring::from_strings(&rows).unwrap();
        assert_eq!(c.to_strings(), rows);
        assert!(Colouring::from_strings(&rows[..9]).is_err());
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<Colouring>(&json).unwrap(), c);
    }
}
