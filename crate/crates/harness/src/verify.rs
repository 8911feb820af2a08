//! Independent re-checking of decoded pairs.
//!
//! Everything here works on plain rows of symbols and restates each property
//! from its definition; the only thing shared with the encoder is the square
//! container itself.

use mols10_core::{Colour, Colouring, PairCase, Square, Subsquare};
use serde::{Deserialize, Serialize};

use crate::decode::Decoded;

pub const NOT_LATIN_P: &str = "P not Latin";
pub const NOT_LATIN_Q: &str = "Q not Latin";
pub const ORDER_MISMATCH: &str = "order mismatch";
pub const TRP_VIOLATION: &str = "TRP violation";
pub const COMPOSITION: &str = "composition not Latin";
pub const Z_MISMATCH: &str = "Z mismatch";
pub const COLOURING: &str = "colouring mismatch";
pub const ROW_TYPE: &str = "row type";
pub const COLUMN_DARKS: &str = "column dark count";
pub const DARK_SYMBOLS: &str = "dark symbols differ";
pub const CASE_TYPE: &str = "case type mismatch";
pub const ROW_ORDER: &str = "row order";
pub const FIRST_COLUMN: &str = "first column order";
pub const FIRST_ROW: &str = "first row";
pub const SUBSQUARE: &str = "subsquare conflict";
pub const NO_SUBSQUARE: &str = "no subsquare chosen";
pub const MISSING_MODEL: &str = "missing colouring";

const N: usize = 10;
const WHITE: usize = 4;
const LEFT: usize = 6;

/// White counts `k = 1..4` per type, in type order R..X.
const TYPE_TABLE: [(char, [usize; 4]); 7] = [
    ('R', [8, 0, 0, 2]),
    ('S', [7, 0, 3, 0]),
    ('T', [7, 1, 1, 1]),
    ('U', [6, 2, 2, 0]),
    ('V', [6, 3, 0, 1]),
    ('W', [5, 4, 1, 0]),
    ('X', [4, 6, 0, 0]),
];

const FIRST_ROWS: [[usize; N]; 3] = [
    [0, 1, 2, 4, 5, 6, 3, 7, 8, 9],
    [0, 1, 3, 4, 5, 6, 2, 7, 8, 9],
    [0, 2, 3, 4, 5, 6, 1, 7, 8, 9],
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub failures: Vec<Failure>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn has(&self, check: &str) -> bool {
        self.failures.iter().any(|f| f.check == check)
    }

    fn fail(&mut self, check: &str, detail: String) {
        self.failures.push(Failure {
            check: check.to_string(),
            detail,
        });
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed() {
            return f.write_str("pass");
        }
        for (k, x) in self.failures.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "FAIL {}: {}", x.check, x.detail)?;
        }
        Ok(())
    }
}

type Rows = Vec<Vec<usize>>;

fn rows(sq: &Square) -> Rows {
    let n = sq.order();
    (0..n).map(|i| (0..n).map(|j| sq.get(i, j)).collect()).collect()
}

fn latin_defect(a: &Rows) -> Option<String> {
    let n = a.len();
    for (i, row) in a.iter().enumerate() {
        let mut seen = vec![false; n];
        for &s in row {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Some(format!("row {i} repeats symbol {s}"));
            }
        }
    }
    for j in 0..n {
        let mut seen = vec![false; n];
        for (i, row) in a.iter().enumerate() {
            if std::mem::replace(&mut seen[row[j]], true) {
                return Some(format!("column {j} repeats symbol {} at row {i}", row[j]));
            }
        }
    }
    None
}

fn column_latin(a: &Rows) -> bool {
    let n = a.len();
    (0..n).all(|j| {
        let mut seen = vec![false; n];
        a.iter().all(|row| row[j] < n && !std::mem::replace(&mut seen[row[j]], true))
    })
}

/// `P⁻¹Q` computed cell by cell: the row of `P`'s column `j` holding `Q[i, j]`.
fn left_quotient(p: &Rows, q: &Rows) -> Rows {
    let n = p.len();
    let mut where_in_p = vec![vec![0; n]; n];
    for (r, row) in p.iter().enumerate() {
        for (j, &s) in row.iter().enumerate() {
            where_in_p[s][j] = r;
        }
    }
    q.iter()
        .map(|row| row.iter().enumerate().map(|(j, &s)| where_in_p[s][j]).collect())
        .collect()
}

/// Checks only what is meaningful for any order: Latin squares, the
/// transversal representation property and the Latin quotient.
pub fn verify_pair(p: &Square, q: &Square) -> Verdict {
    let mut v = Verdict::default();
    check_pair(&mut v, &rows(p), &rows(q));
    v
}

fn check_pair(v: &mut Verdict, p: &Rows, q: &Rows) {
    if p.len() != q.len() {
        v.fail(ORDER_MISMATCH, format!("{} vs {}", p.len(), q.len()));
        return;
    }
    if let Some(d) = latin_defect(p) {
        v.fail(NOT_LATIN_P, d);
    }
    if let Some(d) = latin_defect(q) {
        v.fail(NOT_LATIN_Q, d);
    }
    'outer: for (a, pa) in p.iter().enumerate() {
        for (b, qb) in q.iter().enumerate() {
            let agree: Vec<usize> = (0..pa.len()).filter(|&j| pa[j] == qb[j]).collect();
            if agree.len() > 1 {
                v.fail(
                    TRP_VIOLATION,
                    format!("row {a} of P and row {b} of Q agree in columns {agree:?}"),
                );
                break 'outer;
            }
        }
    }
    if column_latin(p) && column_latin(q) {
        if let Some(d) = latin_defect(&left_quotient(p, q)) {
            v.fail(COMPOSITION, d);
        }
    }
}

fn colour_rows(c: &Colouring) -> Vec<Vec<Colour>> {
    (0..N).map(|i| (0..N).map(|j| c.get(i, j)).collect()).collect()
}

fn omega_cells(sub: Subsquare) -> [[usize; 4]; 4] {
    let mut out = [[0; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = match sub {
                Subsquare::Omega1 => (i + j) % 4,
                Subsquare::Omega2 => i ^ j,
            };
        }
    }
    out
}

/// Per-row white counts, after checking colours against symbols and the dark counts.
fn check_colouring(v: &mut Verdict, name: &str, a: &Rows, c: &[Vec<Colour>]) -> Option<Vec<usize>> {
    let before = v.failures.len();
    for i in 0..N {
        for j in 0..N {
            let small = a[i][j] < WHITE;
            let ok = match c[i][j] {
                Colour::White => small,
                Colour::Light => !small,
                Colour::Dark => !small && j < LEFT,
            };
            if !ok {
                v.fail(
                    COLOURING,
                    format!("{name}[{i},{j}] = {} coloured {:?}", a[i][j], c[i][j]),
                );
            }
        }
    }
    let mut whites = Vec::with_capacity(N);
    for i in 0..N {
        let k = (LEFT..N).filter(|&j| a[i][j] < WHITE).count();
        let d = (0..LEFT).filter(|&j| c[i][j] == Colour::Dark).count();
        if !(1..=4).contains(&k) || d + 2 != 2 * k {
            v.fail(
                ROW_TYPE,
                format!("{name} row {i} has {k} whites and {d} darks"),
            );
        }
        whites.push(k);
    }
    for j in 0..LEFT {
        let d = c.iter().filter(|row| row[j] == Colour::Dark).count();
        if d != 2 {
            v.fail(COLUMN_DARKS, format!("{name} column {j} has {d} dark cells"));
        }
    }
    (v.failures.len() == before).then_some(whites)
}

fn check_layout(v: &mut Verdict, name: &str, a: &Rows, whites: &[usize], label: Option<char>) {
    let mut hist = [0usize; 4];
    for &k in whites {
        hist[k - 1] += 1;
    }
    if let Some(label) = label {
        let expected = TYPE_TABLE.iter().find(|(l, _)| *l == label).map(|(_, h)| *h);
        if expected != Some(hist) {
            v.fail(
                CASE_TYPE,
                format!("{name} has white histogram {hist:?}, type {label} needs {expected:?}"),
            );
        }
    }
    for i in 0..N - 1 {
        if whites[i] > whites[i + 1] {
            v.fail(ROW_ORDER, format!("{name} rows {i} and {} are not sorted by type", i + 1));
        } else if whites[i] == whites[i + 1] && a[i][0] >= a[i + 1][0] {
            v.fail(
                FIRST_COLUMN,
                format!("{name} rows {i} and {} of one type start {} and {}", i + 1, a[i][0], a[i + 1][0]),
            );
        }
    }
}

fn check_subsquare(v: &mut Verdict, name: &str, a: &Rows, sub: Subsquare) {
    let omega = omega_cells(sub);
    for (i, row) in a.iter().enumerate() {
        for (r, orow) in omega.iter().enumerate() {
            let hits: Vec<usize> = (LEFT..N).filter(|&j| row[j] == orow[j - LEFT]).collect();
            if hits.len() > 1 {
                v.fail(
                    SUBSQUARE,
                    format!("{name} row {i} uses row {r} of {sub:?} in columns {hits:?}"),
                );
                return;
            }
        }
    }
}

fn type_labels(case: Option<PairCase>) -> (Option<char>, Option<char>) {
    match case {
        Some(c) => {
            let id: Vec<char> = c.id().chars().collect();
            (id.first().copied(), id.get(1).copied())
        }
        None => (None, None),
    }
}

/// Full verification of a decoded solution. Model checks run whenever both
/// colourings are present.
pub fn verify_solution(d: &Decoded) -> Verdict {
    let mut v = Verdict::default();
    let (p, q) = (rows(&d.p), rows(&d.q));
    check_pair(&mut v, &p, &q);
    if v.has(ORDER_MISMATCH) {
        return v;
    }
    if let Some(z) = &d.z {
        if column_latin(&p) && column_latin(&q) && rows(z) != left_quotient(&p, &q) {
            v.fail(Z_MISMATCH, "decoded Z differs from P⁻¹Q".into());
        }
    }
    let (cp, cq) = match (&d.colours_p, &d.colours_q) {
        (Some(cp), Some(cq)) if p.len() == N => (colour_rows(cp), colour_rows(cq)),
        _ => {
            if d.case.is_some() {
                v.fail(MISSING_MODEL, "case given without colourings".into());
            }
            return v;
        }
    };
    let wp = check_colouring(&mut v, "P", &p, &cp);
    let wq = check_colouring(&mut v, "Q", &q, &cq);
    for j in 0..LEFT {
        let mut dp: Vec<usize> = (0..N).filter(|&i| cp[i][j] == Colour::Dark).map(|i| p[i][j]).collect();
        let mut dq: Vec<usize> = (0..N).filter(|&i| cq[i][j] == Colour::Dark).map(|i| q[i][j]).collect();
        dp.sort_unstable();
        dq.sort_unstable();
        if dp != dq {
            v.fail(DARK_SYMBOLS, format!("column {j}: P has {dp:?}, Q has {dq:?}"));
        }
    }
    let (lp, lq) = type_labels(d.case);
    if let Some(w) = wp {
        check_layout(&mut v, "P", &p, &w, lp);
    }
    if let Some(w) = wq {
        check_layout(&mut v, "Q", &q, &w, lq);
    }
    if !FIRST_ROWS.iter().any(|r| r[..] == p[0][..]) {
        v.fail(FIRST_ROW, format!("P row 0 is {:?}", p[0]));
    }
    if d.omegas.is_empty() {
        v.fail(NO_SUBSQUARE, "neither subsquare flag is set".into());
    }
    for &sub in &d.omegas {
        check_subsquare(&mut v, "P", &p, sub);
        check_subsquare(&mut v, "Q", &q, sub);
    }
    v
}

/// Whether the white placements of `square` avoid taking two cells from any
/// row of the subsquare.
pub fn subsquare_compatible(square: &Square, sub: Subsquare) -> bool {
    let mut v = Verdict::default();
    check_subsquare(&mut v, "", &rows(square), sub);
    v.passed()
}
