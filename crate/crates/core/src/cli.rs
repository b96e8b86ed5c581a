//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 configuration error, 3 runtime
//! abort (population cap, degenerate economy, unwritable output).

use std::fmt;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::config::{MarriageMode, SimConfig};
use crate::metrics::aggregate_runs;
use crate::output;
use crate::sim::{run_pairs, run_simulation, run_sweep, RunReport};
use crate::std_model::{curve_fig4, curve_fig5, StdParams};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Config(String),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Runtime(m) => write!(f, "run aborted: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Half-open `A..B`, inclusive `A..=B`, or a single seed `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedRange(pub Range<u64>);

impl FromStr for SeedRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad seed {t:?}: {e}"))
        };
        let range = if let Some((a, b)) = s.split_once("..=") {
            num(a)?..num(b)?.checked_add(1).ok_or("seed range overflows")?
        } else if let Some((a, b)) = s.split_once("..") {
            num(a)?..num(b)?
        } else {
            let n = num(s)?;
            n..n.checked_add(1).ok_or("seed range overflows")?
        };
        if range.is_empty() {
            return Err(format!("seed range {s:?} is empty"));
        }
        Ok(SeedRange(range))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "marriage-sim",
    version,
    about = "Generational marriage, inheritance and STD birth-rate models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate one seed and write per-generation metrics.
    Run(RunArgs),
    /// Run polygyny and monogamy from shared initial wealth and compare wealth gaps.
    Compare(BatchArgs),
    /// Run many seeds and write per-generation summary statistics.
    Sweep(BatchArgs),
    /// Write the STD birth-rate coefficient and population-ratio curves.
    Std(StdArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SimArgs {
    /// TOML file whose keys are the simulation parameter names.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Marriage system [default: polygyny, or the config file's value].
    #[arg(long, value_parser = ["polygyny", "monogamy"])]
    pub mode: Option<String>,
    /// Number of generations to simulate [default: 12].
    #[arg(long, value_name = "N")]
    pub generations: Option<u32>,
}

impl SimArgs {
    /// Config file values (or defaults) with command-line flags applied on top.
    pub fn resolve(&self, seed: Option<u64>) -> Result<SimConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => {
                SimConfig::from_file(path).map_err(|e| CliError::Config(e.to_string()))?
            }
            None => SimConfig::default(),
        };
        if let Some(mode) = &self.mode {
            cfg.mode = mode
                .parse::<MarriageMode>()
                .map_err(|e| CliError::Usage(e.to_string()))?;
        }
        if let Some(g) = self.generations {
            cfg.total_generations = g;
        }
        if let Some(seed) = seed {
            cfg.seed = seed;
        }
        cfg.validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub sim: SimArgs,
    /// Seed [default: 0, or the config file's value].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output CSV path [default: stdout].
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BatchArgs {
    #[command(flatten)]
    pub sim: SimArgs,
    /// Seeds to run: `A..B` (half-open), `A..=B`, or a single seed.
    #[arg(long, default_value = "0..50")]
    pub seeds: SeedRange,
    /// Worker threads [default: available cores]. Output does not depend on it.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,
    /// Output CSV path [default: stdout].
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Optional per-run termination status CSV.
    #[arg(long, value_name = "PATH")]
    pub status_out: Option<PathBuf>,
}

impl BatchArgs {
    fn jobs(&self) -> usize {
        self.jobs.map(|j| j as usize).unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct StdArgs {
    /// Baseline births per woman.
    #[arg(long, default_value_t = 3.0)]
    pub alpha: f64,
    /// Wife external-infection probability.
    #[arg(long, default_value_t = 0.04)]
    pub beta: f64,
    /// Husband external-infection probability [default: same as --beta].
    #[arg(long)]
    pub beta_m: Option<f64>,
    /// Sterility probabilities, one output column each.
    #[arg(long, value_delimiter = ',', default_values_t = [0.2, 0.4])]
    pub gamma: Vec<f64>,
    /// Average wives per polygynous family for the ratio curve.
    #[arg(long, default_value_t = 8.0)]
    pub q: f64,
    /// Largest wife count in the coefficient curve.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    pub q_max: u32,
    /// Last generation in the population-ratio curve.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    pub k_max: u32,
    /// Directory receiving `coefficient_vs_q.csv` and `ratio_vs_generation.csv`.
    #[arg(long, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
}

pub const COEFFICIENT_FILE: &str = "coefficient_vs_q.csv";
pub const RATIO_FILE: &str = "ratio_vs_generation.csv";

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn cmd_run(args: &RunArgs) -> Result<RunReport, CliError> {
    let cfg = args.sim.resolve(args.seed)?;
    let report = run_simulation(&cfg).map_err(|e| CliError::Config(e.to_string()))?;
    write_output(args.out.as_deref(), &output::run_csv(&report))?;
    if report.status.is_abort() {
        return Err(CliError::Runtime(report.status.to_string()));
    }
    Ok(report)
}

pub fn cmd_compare(args: &BatchArgs) -> Result<String, CliError> {
    let cfg = args.sim.resolve(None)?;
    let pairs = run_pairs(&cfg, args.seeds.0.clone(), args.jobs())
        .map_err(|e| CliError::Config(e.to_string()))?;
    let csv = output::compare_csv(&pairs);
    write_output(args.out.as_deref(), &csv)?;
    if let Some(path) = &args.status_out {
        let reports = pairs.iter().flat_map(|p| [&p.polygyny, &p.monogamy]);
        write_output(Some(path), &output::status_csv(reports))?;
    }
    Ok(csv)
}

pub fn cmd_sweep(args: &BatchArgs) -> Result<String, CliError> {
    let cfg = args.sim.resolve(None)?;
    let reports = run_sweep(&cfg, args.seeds.0.clone(), args.jobs())
        .map_err(|e| CliError::Config(e.to_string()))?;
    let series: Vec<_> = reports.iter().map(|r| r.rows.clone()).collect();
    let csv = output::summary_csv(&aggregate_runs(&series));
    write_output(args.out.as_deref(), &csv)?;
    if let Some(path) = &args.status_out {
        write_output(Some(path), &output::status_csv(&reports))?;
    }
    Ok(csv)
}

fn column_name(p: &StdParams) -> String {
    format!(
        "beta_{}_gamma_{}",
        output::real(p.beta),
        output::real(p.gamma)
    )
}

/// Writes both curve tables and returns their contents.
pub fn cmd_std(args: &StdArgs) -> Result<(String, String), CliError> {
    if args.gamma.is_empty() {
        return Err(CliError::Usage(
            "at least one --gamma value is required".into(),
        ));
    }
    let params = args
        .gamma
        .iter()
        .map(|&gamma| {
            StdParams::new(
                args.alpha,
                args.beta,
                args.beta_m.unwrap_or(args.beta),
                gamma,
                args.q,
            )
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let columns: Vec<String> = params.iter().map(column_name).collect();

    let per_set: Vec<Vec<(u32, f64)>> = params.iter().map(|p| curve_fig4(p, args.q_max)).collect();
    let coefficient_rows: Vec<(u32, Vec<f64>)> = (0..args.q_max as usize)
        .map(|i| (per_set[0][i].0, per_set.iter().map(|c| c[i].1).collect()))
        .collect();
    let coefficients = output::curve_csv("q", &columns, &coefficient_rows);

    let ratio_rows =
        curve_fig5(args.k_max, &params).map_err(|e| CliError::Config(e.to_string()))?;
    let ratios = output::curve_csv("k", &columns, &ratio_rows);

    std::fs::create_dir_all(&args.out)
        .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", args.out.display())))?;
    write_output(Some(&args.out.join(COEFFICIENT_FILE)), &coefficients)?;
    write_output(Some(&args.out.join(RATIO_FILE)), &ratios)?;
    Ok((coefficients, ratios))
}

/// Parses `argv`, runs the chosen command and returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a).map(|r| eprintln!("status: {}", r.status)),
        Command::Compare(a) => cmd_compare(a).map(drop),
        Command::Sweep(a) => cmd_sweep(a).map(drop),
        Command::Std(a) => cmd_std(a).map(drop),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("marriage-sim: {e}");
            e.exit_code()
        }
    }
}
