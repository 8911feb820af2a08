//! Aggregation of solve records into per-case tables, scatter data and an SVG plot.
//!
//! Everything here is a pure function of the record list, sorted by case
//! first, so regenerating a report from a stored log is byte-stable.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::portfolio::SolveRecord;
use crate::runner::Outcome;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseSummary {
    pub case: String,
    pub omega: String,
    pub runs: usize,
    pub solved: usize,
    pub unsat: usize,
    pub timeouts: usize,
    pub errors: usize,
    /// Failed verification; never counted as solved.
    pub rejected: usize,
    pub mean_seconds: Option<f64>,
    pub median_seconds: Option<f64>,
    pub min_seconds: Option<f64>,
    pub max_seconds: Option<f64>,
    pub omega1: usize,
    pub omega2: usize,
    pub transversals: Option<(usize, usize)>,
    pub mates: Option<(usize, usize)>,
    pub common: Option<(usize, usize)>,
    pub mate_limit: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultsTable {
    pub rows: Vec<CaseSummary>,
}

fn median(sorted: &[f64]) -> Option<f64> {
    let n = sorted.len();
    match n {
        0 => None,
        _ if n % 2 == 1 => Some(sorted[n / 2]),
        _ => Some((sorted[n / 2 - 1] + sorted[n / 2]) / 2.0),
    }
}

fn widen(range: &mut Option<(usize, usize)>, x: usize) {
    *range = Some(match *range {
        None => (x, x),
        Some((lo, hi)) => (lo.min(x), hi.max(x)),
    });
}

fn group(records: &[SolveRecord]) -> BTreeMap<(String, String), Vec<&SolveRecord>> {
    let mut groups: BTreeMap<(String, String), Vec<&SolveRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.case.clone(), r.omega.clone())).or_default().push(r);
    }
    for g in groups.values_mut() {
        g.sort_by(|a, b| a.seed.cmp(&b.seed).then(a.wall_seconds.total_cmp(&b.wall_seconds)));
    }
    groups
}

/// Per-case statistics. Timeouts enter the time statistics at the full
/// budget; errors are counted but carry no time.
pub fn aggregate(records: &[SolveRecord]) -> ResultsTable {
    let mut rows = Vec::new();
    for ((case, omega), rs) in group(records) {
        let mut times: Vec<f64> = rs.iter().filter_map(|r| r.charged_seconds()).collect();
        times.sort_by(f64::total_cmp);
        let count = |o: Outcome| rs.iter().filter(|r| r.outcome == o).count();
        let solved: Vec<&&SolveRecord> = rs.iter().filter(|r| r.solved()).collect();
        let mut row = CaseSummary {
            case,
            omega,
            runs: rs.len(),
            solved: solved.len(),
            unsat: count(Outcome::Unsat),
            timeouts: count(Outcome::Timeout),
            errors: count(Outcome::Error),
            rejected: count(Outcome::Sat) - solved.len(),
            mean_seconds: (!times.is_empty()).then(|| times.iter().sum::<f64>() / times.len() as f64),
            median_seconds: median(&times),
            min_seconds: times.first().copied(),
            max_seconds: times.last().copied(),
            omega1: 0,
            omega2: 0,
            transversals: None,
            mates: None,
            common: None,
            mate_limit: None,
        };
        for r in &solved {
            let Some(s) = &r.stats else { continue };
            row.omega1 += usize::from(s.omega1_compatible == Some(true));
            row.omega2 += usize::from(s.omega2_compatible == Some(true));
            widen(&mut row.transversals, s.transversals_p);
            widen(&mut row.transversals, s.transversals_q);
            widen(&mut row.mates, s.mates_p);
            widen(&mut row.mates, s.mates_q);
            widen(&mut row.common, s.common_transversals);
            row.mate_limit = row.mate_limit.or(s.mate_limit);
        }
        rows.push(row);
    }
    ResultsTable { rows }
}

fn secs(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.1}")).unwrap_or_default()
}

fn range(x: Option<(usize, usize)>) -> String {
    x.map(|(lo, hi)| format!("{lo}--{hi}")).unwrap_or_default()
}

const TABLE_HEADER: [&str; 18] = [
    "case",
    "omega",
    "runs",
    "solved",
    "unsat",
    "timeouts",
    "errors",
    "rejected",
    "mean",
    "median",
    "min",
    "max",
    "omega1",
    "omega2",
    "transversals",
    "mates",
    "common_transversals",
    "mate_limit",
];

#[derive(Serialize)]
struct CsvRow {
    case: String,
    omega: String,
    runs: usize,
    solved: usize,
    unsat: usize,
    timeouts: usize,
    errors: usize,
    rejected: usize,
    mean: String,
    median: String,
    min: String,
    max: String,
    omega1: usize,
    omega2: usize,
    transversals: String,
    mates: String,
    common_transversals: String,
    mate_limit: String,
}

/// The run-time and pair statistics table. `max` reads `timeout` when any run timed out.
/// An empty table is just the header.
pub fn table_csv(table: &ResultsTable) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(TABLE_HEADER).expect("in-memory CSV");
    for r in &table.rows {
        let max = if r.timeouts > 0 {
            "timeout".to_string()
        } else {
            secs(r.max_seconds)
        };
        w.serialize(CsvRow {
            case: r.case.clone(),
            omega: r.omega.clone(),
            runs: r.runs,
            solved: r.solved,
            unsat: r.unsat,
            timeouts: r.timeouts,
            errors: r.errors,
            rejected: r.rejected,
            mean: secs(r.mean_seconds),
            median: secs(r.median_seconds),
            min: secs(r.min_seconds),
            max,
            omega1: r.omega1,
            omega2: r.omega2,
            transversals: range(r.transversals),
            mates: range(r.mates),
            common_transversals: range(r.common),
            mate_limit: r.mate_limit.map(|m| m.to_string()).unwrap_or_default(),
        })
        .expect("in-memory CSV");
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV")).expect("UTF-8 CSV")
}

#[derive(Serialize)]
struct ScatterRow<'a> {
    case: &'a str,
    omega: &'a str,
    seed: u64,
    outcome: Outcome,
    seconds: String,
    plotted: bool,
}

/// One line per run. Timeouts are listed but not plotted.
pub fn scatter_csv(records: &[SolveRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for rs in group(records).values() {
        for r in rs {
            w.serialize(ScatterRow {
                case: &r.case,
                omega: &r.omega,
                seed: r.seed,
                outcome: r.outcome,
                seconds: format!("{:.3}", r.charged_seconds().unwrap_or(r.wall_seconds)),
                plotted: matches!(r.outcome, Outcome::Sat | Outcome::Unsat),
            })
            .expect("in-memory CSV");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV")).expect("UTF-8 CSV")
}

/// Run times per case on a log scale with the median as a black bar.
pub fn scatter_svg(records: &[SolveRecord]) -> String {
    let groups = group(records);
    let (width, height, left, bottom, top) = (120 + 90 * groups.len().max(1), 420usize, 70.0, 360.0, 20.0);
    let plotted: Vec<f64> = records
        .iter()
        .filter(|r| matches!(r.outcome, Outcome::Sat | Outcome::Unsat))
        .map(|r| r.wall_seconds)
        .chain(records.iter().filter_map(|r| r.charged_seconds()))
        .map(|s| s.max(1e-3))
        .collect();
    let lo = plotted.iter().copied().fold(f64::INFINITY, f64::min).log10().floor();
    let hi = plotted.iter().copied().fold(f64::NEG_INFINITY, f64::max).log10().ceil();
    let (lo, hi) = if lo.is_finite() && hi > lo { (lo, hi) } else { (-3.0, 0.0) };
    let y = |s: f64| bottom - (s.max(1e-3).log10() - lo) / (hi - lo) * (bottom - top);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="black"/>"#
    );
    for e in lo as i32..=hi as i32 {
        let yy = y(10f64.powi(e));
        let _ = writeln!(
            svg,
            r#"<line x1="{:.1}" y1="{yy:.1}" x2="{left}" y2="{yy:.1}" stroke="black"/><text x="{:.1}" y="{:.1}" text-anchor="end">1e{e}</text>"#,
            left - 5.0,
            left - 8.0,
            yy + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="15" y="{:.1}" transform="rotate(-90 15 {:.1})" text-anchor="middle">seconds</text>"#,
        (top + bottom) / 2.0,
        (top + bottom) / 2.0
    );
    for (k, ((case, omega), rs)) in groups.iter().enumerate() {
        let cx = left + 60.0 + 90.0 * k as f64;
        let label = if omega.is_empty() { case.clone() } else { format!("{case} {omega}") };
        let _ = writeln!(
            svg,
            r#"<text x="{cx:.1}" y="{:.1}" text-anchor="middle">{label}</text>"#,
            bottom + 20.0
        );
        for (m, r) in rs.iter().enumerate() {
            if !matches!(r.outcome, Outcome::Sat | Outcome::Unsat) {
                continue;
            }
            let dx = ((m * 7) % 11) as f64 * 3.0 - 15.0;
            let fill = if r.outcome == Outcome::Sat { "steelblue" } else { "grey" };
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="{fill}"/>"#,
                cx + dx,
                y(r.wall_seconds)
            );
        }
        let mut times: Vec<f64> = rs.iter().filter_map(|r| r.charged_seconds()).collect();
        times.sort_by(f64::total_cmp);
        if let Some(m) = median(&times) {
            let _ = writeln!(
                svg,
                r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black" stroke-width="2"/>"#,
                cx - 25.0,
                y(m),
                cx + 25.0,
                y(m)
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}

/// Solved records grouped by pair certificate; singleton classes included.
pub fn dedupe(records: &[SolveRecord]) -> Vec<Vec<usize>> {
    let mut classes: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        if let (true, Some(s)) = (r.solved(), &r.stats) {
            classes.entry(&s.certificate).or_default().push(i);
        }
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort();
    out
}
