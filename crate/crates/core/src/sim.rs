//! Generation loop, paired comparisons and multi-seed sweeps.

use std::fmt;
use std::ops::Range;

use rayon::prelude::*;

use crate::config::{MarriageMode, SimConfig};
use crate::demography::{advance_generation, Succession};
use crate::error::{Result, SimError};
use crate::marriage::{match_generation, MarriageCurveParams, MatchOutcome};
use crate::metrics::GenerationMetrics;
use crate::population::{compute_wealth_ratios, init_generation, GenerationState};
use crate::rng::{RngStream, DYNAMICS_STREAM, INIT_STREAM};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Completed,
    /// Generation `generation` was born with no men or no women.
    Extinct {
        generation: u32,
    },
    CapBreach {
        generation: u32,
    },
    DegenerateEconomy {
        generation: u32,
    },
}

impl Termination {
    /// Aborts are failures; completion and extinction are normal outcomes.
    pub fn is_abort(&self) -> bool {
        matches!(
            self,
            Termination::CapBreach { .. } | Termination::DegenerateEconomy { .. }
        )
    }

    pub fn label(&self) -> &'static str {
        match self {
            Termination::Completed => "completed",
            Termination::Extinct { .. } => "extinct",
            Termination::CapBreach { .. } => "cap_breach",
            Termination::DegenerateEconomy { .. } => "degenerate_economy",
        }
    }

    pub fn generation(&self) -> Option<u32> {
        match *self {
            Termination::Completed => None,
            Termination::Extinct { generation }
            | Termination::CapBreach { generation }
            | Termination::DegenerateEconomy { generation } => Some(generation),
        }
    }
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.generation() {
            Some(k) => write!(f, "{} at generation {k}", self.label()),
            None => f.write_str(self.label()),
        }
    }
}

/// Everything observed in one generation step.
#[derive(Debug, Clone)]
pub struct Step {
    /// The matched generation, with wife and son counts filled in.
    pub state: GenerationState,
    pub outcome: MatchOutcome,
    pub metrics: GenerationMetrics,
    /// `None` for the final generation, which does not reproduce.
    pub succession: Option<Succession>,
}

/// Step-by-step driver for one run.
///
/// Generation 1 is drawn from sub-stream [`INIT_STREAM`]; matching,
/// reproduction and inheritance draw from [`DYNAMICS_STREAM`].
pub struct Simulation {
    config: SimConfig,
    params: MarriageCurveParams,
    rng: RngStream,
    current: Option<GenerationState>,
    status: Option<Termination>,
}

impl Simulation {
    pub fn new(config: SimConfig) -> Result<Self> {
        config.validate()?;
        let mut init_rng = RngStream::with_stream(config.seed, INIT_STREAM);
        let first = init_generation(&config, &mut init_rng);
        Ok(Self {
            params: MarriageCurveParams::new(config.lambda, config.mu),
            rng: RngStream::with_stream(config.seed, DYNAMICS_STREAM),
            current: Some(first),
            status: None,
            config,
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    /// Set once the run has ended.
    pub fn status(&self) -> Option<Termination> {
        self.status
    }

    /// Runs one generation: ratios, matching, metrics, then reproduction and
    /// inheritance unless this is the last generation. Returns `None` after
    /// the run has ended.
    pub fn step(&mut self) -> Option<Step> {
        let mut state = self.current.take()?;
        if state.is_extinct() {
            self.status = Some(Termination::Extinct {
                generation: state.index,
            });
            return None;
        }
        if let Err(SimError::DegenerateEconomy { generation, .. }) =
            compute_wealth_ratios(&mut state)
        {
            self.status = Some(Termination::DegenerateEconomy { generation });
            return None;
        }

        let outcome = match_generation(
            &state,
            self.config.mode,
            self.params,
            self.config.marriage_noise_std,
            &mut self.rng,
        );
        outcome.apply(&mut state);
        let metrics = GenerationMetrics::observe(&state, &outcome);

        if state.index >= self.config.total_generations {
            self.status = Some(Termination::Completed);
            return Some(Step {
                state,
                outcome,
                metrics,
                succession: None,
            });
        }

        match advance_generation(&mut state, &outcome, &self.config, &mut self.rng) {
            Ok(succession) => {
                self.current = Some(succession.next.clone());
                Some(Step {
                    state,
                    outcome,
                    metrics,
                    succession: Some(succession),
                })
            }
            Err(SimError::PopulationCap { generation, .. }) => {
                self.status = Some(Termination::CapBreach { generation });
                Some(Step {
                    state,
                    outcome,
                    metrics,
                    succession: None,
                })
            }
            Err(other) => unreachable!("advance_generation only fails on the cap: {other}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub config: SimConfig,
    /// Consecutive generations starting at 1.
    pub rows: Vec<GenerationMetrics>,
    pub status: Termination,
}

pub fn run_simulation(config: &SimConfig) -> Result<RunReport> {
    let mut sim = Simulation::new(config.clone())?;
    let mut rows = Vec::with_capacity(config.total_generations as usize);
    while let Some(step) = sim.step() {
        rows.push(step.metrics);
    }
    let status = sim.status().expect("a finished run has a status");
    Ok(RunReport {
        config: config.clone(),
        rows,
        status,
    })
}

/// Both marriage modes from the same seed, hence the same generation 1.
#[derive(Debug, Clone)]
pub struct PairedRun {
    pub seed: u64,
    pub polygyny: RunReport,
    pub monogamy: RunReport,
}

pub fn run_pair(config: &SimConfig, seed: u64) -> Result<PairedRun> {
    let with_mode = |mode| SimConfig {
        mode,
        seed,
        ..config.clone()
    };
    Ok(PairedRun {
        seed,
        polygyny: run_simulation(&with_mode(MarriageMode::Polygyny))?,
        monogamy: run_simulation(&with_mode(MarriageMode::Monogamy))?,
    })
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| SimError::InvalidConfig(format!("cannot start worker pool: {e}")))
}

/// Runs every seed in `seeds` on up to `jobs` threads. Results come back in
/// ascending seed order regardless of scheduling.
pub fn run_sweep(config: &SimConfig, seeds: Range<u64>, jobs: usize) -> Result<Vec<RunReport>> {
    config.validate()?;
    pool(jobs)?.install(|| {
        seeds
            .into_par_iter()
            .map(|seed| {
                run_simulation(&SimConfig {
                    seed,
                    ..config.clone()
                })
            })
            .collect()
    })
}

pub fn run_pairs(config: &SimConfig, seeds: Range<u64>, jobs: usize) -> Result<Vec<PairedRun>> {
    config.validate()?;
    pool(jobs)?.install(|| {
        seeds
            .into_par_iter()
            .map(|seed| run_pair(config, seed))
            .collect()
    })
}
