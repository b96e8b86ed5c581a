//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use marriage_sim::cli::{cmd_compare, cmd_run, cmd_sweep, BatchArgs, RunArgs, SeedRange, SimArgs};
use marriage_sim::marriage::{expected_wives, MarriageCurveParams};
use marriage_sim::metrics::{median, polygyny_variance, wealth_gap_ratio};
use marriage_sim::sim::{run_pairs, run_sweep, RunReport};
use marriage_sim::std_model::{
    curve_fig5, husband_factor_coefficient, monogamy_polygyny_ratio, population_closed_form,
    population_step, wife_factor_coefficient, StdParams,
};
use marriage_sim::{RngStream, SimConfig};

const SEEDS: std::ops::Range<u64> = 0..50;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn variance_at(r: &RunReport, generation: u32) -> Option<f64> {
    r.rows
        .iter()
        .find(|m| m.generation == generation)
        .and_then(|m| m.polygyny_variance)
}

fn gap_at(r: &RunReport, generation: u32) -> Option<f64> {
    r.rows
        .iter()
        .find(|m| m.generation == generation)
        .and_then(|m| m.wealth_gap_ratio)
}

/// Median generation-1 variance >= 1.0 and median variance <= 0.3 at every
/// generation >= 3, over 50 default seeds, within 30 s.
fn monogamy_emergence() -> Outcome {
    let start = Instant::now();
    let reports = run_sweep(&SimConfig::default(), SEEDS, 1).unwrap();
    let elapsed = start.elapsed();
    let medians: Vec<(u32, f64)> = (1..=12)
        .filter_map(|g| {
            let vals: Vec<f64> = reports.iter().filter_map(|r| variance_at(r, g)).collect();
            median(&vals).map(|m| (g, m))
        })
        .collect();
    let first = medians[0].1;
    let late_worst = medians
        .iter()
        .filter(|(g, _)| *g >= 3)
        .map(|&(_, m)| m)
        .fold(f64::NEG_INFINITY, f64::max);
    let failing: Vec<String> = medians
        .iter()
        .filter(|(g, m)| *g >= 3 && *m > 0.3)
        .map(|(g, m)| format!("g{g}={m:.3}"))
        .collect();
    check(
        first >= 1.0 && late_worst <= 0.3 && elapsed < Duration::from_secs(30),
        format!(
            "median gen-1 variance {first:.3} (>= 1.0); max median gen>=3 {late_worst:.3} (<= 0.3){}; {:.2}s",
            if failing.is_empty() { String::new() } else { format!(" over: {}", failing.join(" ")) },
            elapsed.as_secs_f64()
        ),
    )
}

/// The generation after the peak wealth gap has below-median variance in
/// >= 60% of runs.
fn post_shock_spike() -> Outcome {
    let reports = run_sweep(&SimConfig::default(), SEEDS, 1).unwrap();
    let mut hits = 0;
    for r in &reports {
        let peak = r
            .rows
            .iter()
            .filter(|m| m.wealth_gap_ratio.is_some())
            .max_by(|a, b| {
                a.wealth_gap_ratio
                    .unwrap()
                    .total_cmp(&b.wealth_gap_ratio.unwrap())
            })
            .map(|m| m.generation)
            .unwrap();
        let run_median = median(
            &r.rows
                .iter()
                .filter_map(|m| m.polygyny_variance)
                .collect::<Vec<_>>(),
        )
        .unwrap();
        if variance_at(r, peak + 1).is_some_and(|v| v < run_median) {
            hits += 1;
        }
    }
    let share = hits as f64 / reports.len() as f64;
    check(
        share >= 0.6,
        format!("{hits}/{} runs ({share:.2}, need >= 0.60)", reports.len()),
    )
}

/// Monogamy's mean gap over generations 2-6 exceeds polygyny's in >= 80% of
/// pairs, and the mean mode gap at 10-12 is below that at 2-4.
fn wealth_gap_ordering() -> Outcome {
    let pairs = run_pairs(&SimConfig::default(), SEEDS, 1).unwrap();
    let window_mean = |r: &RunReport, gens: std::ops::RangeInclusive<u32>| {
        let v: Vec<f64> = gens.filter_map(|g| gap_at(r, g)).collect();
        v.iter().sum::<f64>() / v.len() as f64
    };
    let shared_init = pairs
        .iter()
        .all(|p| gap_at(&p.polygyny, 1) == gap_at(&p.monogamy, 1));
    let wins = pairs
        .iter()
        .filter(|p| window_mean(&p.monogamy, 2..=6) > window_mean(&p.polygyny, 2..=6))
        .count();
    let share = wins as f64 / pairs.len() as f64;
    let mode_gap = |gens: std::ops::RangeInclusive<u32>| {
        let diffs: Vec<f64> = pairs
            .iter()
            .flat_map(|p| {
                gens.clone()
                    .filter_map(|g| Some(gap_at(&p.monogamy, g)? - gap_at(&p.polygyny, g)?))
                    .collect::<Vec<_>>()
            })
            .collect();
        diffs.iter().sum::<f64>() / diffs.len() as f64
    };
    let early = mode_gap(2..=4);
    let late = mode_gap(10..=12);
    check(
        shared_init && share >= 0.8 && late < early,
        format!(
            "monogamy wider in {wins}/{} pairs ({share:.2}, need >= 0.80); mean gap difference g2-4 {early:.3}, g10-12 {late:.3}; shared gen-1: {shared_init}",
            pairs.len()
        ),
    )
}

fn std_analytics() -> Outcome {
    let base = StdParams::default();
    let g2 = StdParams { gamma: 0.2, ..base };
    let g4 = StdParams { gamma: 0.4, ..base };
    let c1 = wife_factor_coefficient(&g2.with_q(1.0));
    let c8 = wife_factor_coefficient(&g2);
    let symmetric = (0..=100).all(|i| {
        let b = i as f64 / 100.0;
        let p = StdParams {
            beta: b,
            beta_m: b,
            q: 1.0,
            ..g2
        };
        (wife_factor_coefficient(&p) - husband_factor_coefficient(&p)).abs() <= 1e-15
    });
    let r2 = monogamy_polygyny_ratio(2, &g2).unwrap();
    let r4 = monogamy_polygyny_ratio(2, &g4).unwrap();
    let table = curve_fig5(40, &[g2, g4]).unwrap();
    let increasing = table
        .windows(2)
        .all(|w| w[1].1[0] > w[0].1[0] && w[1].1[1] > w[0].1[1]);
    let dominant = table
        .iter()
        .filter(|(k, _)| *k >= 2)
        .all(|(_, r)| r[1] > r[0]);
    let pass = (c1 - 0.992).abs() <= 1e-12
        && (c8 - 0.9442779).abs() <= 1e-7
        && symmetric
        && (r2 - 1.0505).abs() <= 1e-4
        && (r4 - 1.1074).abs() <= 1e-4
        && increasing
        && dominant;
    check(
        pass,
        format!(
            "c(q=1)={c1:.15} c(q=8)={c8:.9} symmetry={symmetric} ratio(k=2) {r2:.6}/{r4:.6} increasing={increasing} dominance={dominant}"
        ),
    )
}

fn closed_form_vs_recursion() -> Outcome {
    let mut rng = RngStream::new(2024);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let p = StdParams::new(
            0.5 + 4.0 * rng.uniform(),
            rng.uniform(),
            rng.uniform(),
            rng.uniform(),
            1.0 + 15.0 * rng.uniform(),
        )
        .unwrap();
        let xi1 = 1.0 + 1000.0 * rng.uniform();
        let mut xi = xi1;
        for k in 1..=50u32 {
            let closed = population_closed_form(xi1, k, &p);
            let rel = if xi == 0.0 {
                closed.abs()
            } else {
                ((closed - xi) / xi).abs()
            };
            worst = worst.max(rel);
            xi = population_step(xi, &p);
        }
    }
    check(
        worst <= 1e-12,
        format!("max relative error {worst:.3e} (<= 1e-12)"),
    )
}

fn metric_oracles() -> Outcome {
    let gen1 = [
        14, 0, 1, 1, 0, 0, 1, 4, 1, 1, 0, 1, 0, 0, 0, 1, 1, 0, 0, 1, 0, 0, 1, 1, 5, 0, 0, 0, 0, 0,
    ];
    let gen2 = [
        1, 1, 1, 1, 1, 2, 1, 0, 1, 1, 1, 1, 1, 1, 0, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 2, 1,
    ];
    let v1 = polygyny_variance(&gen1).unwrap();
    let v2 = polygyny_variance(&gen2).unwrap();
    let gap = wealth_gap_ratio(&[0.0, 200.0]).unwrap();
    check(
        (v1 - 210.0 / 29.0).abs() <= 1e-9
            && (v2 - 6.0 / 27.0).abs() <= 1e-9
            && (gap - 2f64.sqrt()).abs() <= 1e-12,
        format!("gen1 {v1:.10} gen2 {v2:.10} gap {gap:.15}"),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name);
    let sim = SimArgs {
        config: None,
        mode: None,
        generations: None,
    };
    let run = |out: &str| {
        cmd_run(&RunArgs {
            sim: sim.clone(),
            seed: Some(17),
            out: Some(path(out)),
        })
        .unwrap();
        std::fs::read(path(out)).unwrap()
    };
    let runs_equal = run("a.csv") == run("b.csv");

    let batch = |jobs: u32, out: &str| BatchArgs {
        sim: sim.clone(),
        seeds: SeedRange(SEEDS),
        jobs: Some(jobs),
        out: Some(path(out)),
        status_out: None,
    };
    cmd_sweep(&batch(1, "s1.csv")).unwrap();
    cmd_sweep(&batch(8, "s8.csv")).unwrap();
    let sweeps_equal =
        std::fs::read(path("s1.csv")).unwrap() == std::fs::read(path("s8.csv")).unwrap();
    cmd_compare(&batch(1, "c1.csv")).unwrap();
    cmd_compare(&batch(8, "c8.csv")).unwrap();
    let compares_equal =
        std::fs::read(path("c1.csv")).unwrap() == std::fs::read(path("c8.csv")).unwrap();

    let bin = env!("CARGO_BIN_EXE_marriage-sim");
    let via_binary = |jobs: &str| {
        let out = std::process::Command::new(bin)
            .args(["sweep", "--seeds", "0..50", "--jobs", jobs])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let binary_equal = via_binary("1") == via_binary("8");

    check(
        runs_equal && sweeps_equal && compares_equal && binary_equal,
        format!(
            "run x2 {runs_equal}; sweep jobs 1 vs 8 {sweeps_equal}; compare jobs 1 vs 8 {compares_equal}; binary {binary_equal}"
        ),
    )
}

fn curve_properties() -> Outcome {
    let mut rng = RngStream::new(8);
    let exact_one = (0..100).all(|_| {
        let p =
            MarriageCurveParams::new(0.01 + 100.0 * rng.uniform(), 0.01 + 100.0 * rng.uniform());
        expected_wives(1.0, p) == 1.0
    });
    let p = MarriageCurveParams::default();
    let h = 1e-4;
    let grid: Vec<f64> = (0..1000)
        .map(|i| -50.0 + 100.0 * i as f64 / 999.0)
        .collect();
    let monotone = grid
        .windows(2)
        .all(|w| expected_wives(w[0], p) < expected_wives(w[1], p));
    let slope = |x: f64| (expected_wives(x + h, p) - expected_wives(x - h, p)) / (2.0 * h);
    let slopes: Vec<f64> = grid.iter().map(|&x| slope(x)).collect();
    let bounded = slopes.iter().all(|&s| s > 0.0 && s < 1.0);
    let nonneg: Vec<f64> = grid
        .iter()
        .zip(&slopes)
        .filter(|(x, _)| **x >= 0.0)
        .map(|(_, s)| *s)
        .collect();
    let non_increasing = nonneg.windows(2).all(|w| w[1] <= w[0] + 1e-9);
    let limit_err = (expected_wives(1e6, p) - p.saturation()).abs();
    check(
        exact_one && monotone && bounded && non_increasing && limit_err <= 1e-9,
        format!(
            "f(1)=1 {exact_one}; monotone {monotone}; 0<slope<1 {bounded}; slope non-increasing {non_increasing}; saturation error {limit_err:.1e}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 monogamy emergence", monogamy_emergence),
        ("2 post-shock monogamy", post_shock_spike),
        ("3 wealth-gap ordering", wealth_gap_ordering),
        ("4 STD analytics", std_analytics),
        ("5 closed form vs recursion", closed_form_vs_recursion),
        ("6 metric oracles", metric_oracles),
        ("7 determinism", determinism),
        ("8 curve properties", curve_properties),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        let o = criterion();
        println!(
            "[{}] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
