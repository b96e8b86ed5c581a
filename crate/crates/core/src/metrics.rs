//! Per-generation indices and cross-run aggregation.

use std::collections::BTreeMap;

use crate::error::{Result, SimError};
use crate::marriage::MatchOutcome;
use crate::population::GenerationState;

/// `Σ (qᵢ − 1)² / (N − 1)`: squared deviation of each man's wife count from
/// one, unmarried men included.
pub fn polygyny_variance(wife_counts: &[u32]) -> Result<f64> {
    if wife_counts.len() < 2 {
        return Err(SimError::UndefinedMetric(
            "polygyny variance needs at least two men",
        ));
    }
    let sum: f64 = wife_counts
        .iter()
        .map(|&q| {
            let d = f64::from(q) - 1.0;
            d * d
        })
        .sum();
    Ok(sum / (wife_counts.len() - 1) as f64)
}

/// Sample standard deviation of wealth divided by mean wealth.
pub fn wealth_gap_ratio(wealths: &[f64]) -> Result<f64> {
    if wealths.len() < 2 {
        return Err(SimError::UndefinedMetric(
            "wealth gap ratio needs at least two men",
        ));
    }
    let n = wealths.len() as f64;
    let mean = wealths.iter().sum::<f64>() / n;
    if mean == 0.0 {
        return Err(SimError::UndefinedMetric("mean wealth is zero"));
    }
    let ss: f64 = wealths.iter().map(|w| (w - mean) * (w - mean)).sum();
    Ok((ss / (n - 1.0)).sqrt() / mean)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationMetrics {
    pub generation: u32,
    pub men_count: usize,
    pub women_count: usize,
    pub unmarried_women: usize,
    /// `None` when fewer than two men exist.
    pub polygyny_variance: Option<f64>,
    /// `None` when fewer than two men exist or mean wealth is zero.
    pub wealth_gap_ratio: Option<f64>,
}

impl GenerationMetrics {
    /// Metrics for a matched generation, before reproduction.
    pub fn observe(state: &GenerationState, outcome: &MatchOutcome) -> Self {
        let wealths: Vec<f64> = state.men.iter().map(|m| m.wealth).collect();
        Self {
            generation: state.index,
            men_count: state.men.len(),
            women_count: state.women_count,
            unmarried_women: outcome.unmarried_women,
            polygyny_variance: polygyny_variance(&outcome.assignments).ok(),
            wealth_gap_ratio: wealth_gap_ratio(&wealths).ok(),
        }
    }
}

/// Order statistics of one metric at one generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub q10: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub q90: f64,
}

impl Summary {
    /// Returns `None` for an empty sample.
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Some(Self {
            count: sorted.len(),
            mean: sorted.iter().sum::<f64>() / sorted.len() as f64,
            q10: quantile_sorted(&sorted, 0.10),
            q25: quantile_sorted(&sorted, 0.25),
            median: quantile_sorted(&sorted, 0.5),
            q75: quantile_sorted(&sorted, 0.75),
            q90: quantile_sorted(&sorted, 0.90),
        })
    }
}

/// Linear interpolation between closest ranks (`h = (n − 1)·p`).
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn median(values: &[f64]) -> Option<f64> {
    Summary::of(values).map(|s| s.median)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub generation: u32,
    /// Runs that reached this generation.
    pub runs: usize,
    pub polygyny_variance: Option<Summary>,
    pub wealth_gap_ratio: Option<Summary>,
}

/// Aligns runs by generation index and summarizes each metric per
/// generation. Runs may have different lengths; undefined cells are skipped.
pub fn aggregate_runs(series: &[Vec<GenerationMetrics>]) -> Vec<SummaryRow> {
    let mut cells: BTreeMap<u32, (usize, Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for run in series {
        for m in run {
            let cell = cells.entry(m.generation).or_default();
            cell.0 += 1;
            cell.1.extend(m.polygyny_variance);
            cell.2.extend(m.wealth_gap_ratio);
        }
    }
    cells
        .into_iter()
        .map(|(generation, (runs, poly, gap))| SummaryRow {
            generation,
            runs,
            polygyny_variance: Summary::of(&poly),
            wealth_gap_ratio: Summary::of(&gap),
        })
        .collect()
}
