//! CSV serialization. Reals are printed like C's `%.9g`, rows end in `\n`,
//! and undefined cells are left empty.

use std::fmt::Write;

use crate::metrics::{GenerationMetrics, Summary, SummaryRow};
use crate::sim::{PairedRun, RunReport};

pub const RUN_HEADER: &str =
    "generation,men,women,unmarried_women,polygyny_variance,wealth_gap_ratio";

pub const COMPARE_HEADER: &str =
    "seed,generation,polygyny_wealth_gap,monogamy_wealth_gap,difference";

pub const STATUS_HEADER: &str = "seed,mode,status,generation,rows";

/// Formats `x` with `sig` significant digits, choosing fixed or exponent
/// notation and trimming trailing zeros the way `%g` does.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn real(x: f64) -> String {
    format_sig(x, 9)
}

fn opt(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

pub fn metrics_row(m: &GenerationMetrics) -> String {
    format!(
        "{},{},{},{},{},{}",
        m.generation,
        m.men_count,
        m.women_count,
        m.unmarried_women,
        opt(m.polygyny_variance),
        opt(m.wealth_gap_ratio)
    )
}

pub fn run_csv(report: &RunReport) -> String {
    let mut out = String::new();
    writeln!(out, "{RUN_HEADER}").unwrap();
    for row in &report.rows {
        writeln!(out, "{}", metrics_row(row)).unwrap();
    }
    out
}

const STAT_NAMES: [&str; 7] = ["count", "mean", "q10", "q25", "median", "q75", "q90"];

pub fn summary_header() -> String {
    let mut cols = vec!["generation".to_string(), "runs".to_string()];
    for metric in ["polygyny_variance", "wealth_gap_ratio"] {
        cols.extend(STAT_NAMES.iter().map(|s| format!("{metric}_{s}")));
    }
    cols.join(",")
}

fn summary_cells(s: Option<Summary>) -> Vec<String> {
    match s {
        Some(s) => {
            let mut cells = vec![s.count.to_string()];
            cells.extend([s.mean, s.q10, s.q25, s.median, s.q75, s.q90].map(real));
            cells
        }
        None => {
            let mut cells = vec!["0".to_string()];
            cells.extend(std::iter::repeat_n(String::new(), STAT_NAMES.len() - 1));
            cells
        }
    }
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = summary_header();
    out.push('\n');
    for row in rows {
        let mut cells = vec![row.generation.to_string(), row.runs.to_string()];
        cells.extend(summary_cells(row.polygyny_variance));
        cells.extend(summary_cells(row.wealth_gap_ratio));
        writeln!(out, "{}", cells.join(",")).unwrap();
    }
    out
}

/// Per-run termination record for sweeps and comparisons.
pub fn status_csv<'a>(reports: impl IntoIterator<Item = &'a RunReport>) -> String {
    let mut out = String::new();
    writeln!(out, "{STATUS_HEADER}").unwrap();
    for r in reports {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.config.seed,
            r.config.mode,
            r.status.label(),
            r.status
                .generation()
                .map(|g| g.to_string())
                .unwrap_or_default(),
            r.rows.len()
        )
        .unwrap();
    }
    out
}

/// One row per seed and generation reached by either mode. `difference` is
/// monogamy minus polygyny.
pub fn compare_csv(pairs: &[PairedRun]) -> String {
    let mut out = String::new();
    writeln!(out, "{COMPARE_HEADER}").unwrap();
    for pair in pairs {
        let gap = |r: &RunReport, k: usize| r.rows.get(k).and_then(|m| m.wealth_gap_ratio);
        let len = pair.polygyny.rows.len().max(pair.monogamy.rows.len());
        for k in 0..len {
            let p = gap(&pair.polygyny, k);
            let m = gap(&pair.monogamy, k);
            let diff = p.zip(m).map(|(p, m)| m - p);
            writeln!(
                out,
                "{},{},{},{},{}",
                pair.seed,
                k + 1,
                opt(p),
                opt(m),
                opt(diff)
            )
            .unwrap();
        }
    }
    out
}

/// Header row then one row per abscissa, one column per series.
pub fn curve_csv(x_name: &str, columns: &[String], rows: &[(u32, Vec<f64>)]) -> String {
    let mut out = String::new();
    writeln!(out, "{x_name},{}", columns.join(",")).unwrap();
    for (x, ys) in rows {
        let cells: Vec<String> = ys.iter().copied().map(real).collect();
        writeln!(out, "{x},{}", cells.join(",")).unwrap();
    }
    out
}
