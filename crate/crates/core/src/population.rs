//! Men, generations, and the initial wealth distribution.

use crate::config::SimConfig;
use crate::error::{Result, SimError};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ManRecord {
    pub wealth: f64,
    /// Wealth divided by the generation's mean wealth.
    pub wealth_ratio: f64,
    pub wife_count: u32,
    pub son_count: u32,
}

impl ManRecord {
    pub fn with_wealth(wealth: f64) -> Self {
        Self {
            wealth,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerationState {
    /// 1-based generation number.
    pub index: u32,
    pub men: Vec<ManRecord>,
    pub women_count: usize,
    pub total_wealth: f64,
}

impl GenerationState {
    pub fn new(index: u32, wealths: impl IntoIterator<Item = f64>, women_count: usize) -> Self {
        let men: Vec<ManRecord> = wealths.into_iter().map(ManRecord::with_wealth).collect();
        let total_wealth = men.iter().map(|m| m.wealth).sum();
        Self {
            index,
            men,
            women_count,
            total_wealth,
        }
    }

    pub fn men_count(&self) -> usize {
        self.men.len()
    }

    pub fn recompute_total_wealth(&mut self) {
        self.total_wealth = self.men.iter().map(|m| m.wealth).sum();
    }

    pub fn mean_wealth(&self) -> f64 {
        self.total_wealth / self.men.len() as f64
    }

    pub fn is_extinct(&self) -> bool {
        self.men.is_empty() || self.women_count == 0
    }
}

/// Draws generation 1: Gaussian base wealth per man, plus an elite bonus with
/// probability `elite_fraction`. Negative wealth is kept as drawn.
///
/// Draw order per man: base wealth, elite coin, bonus (only if the coin hits).
pub fn init_generation(config: &SimConfig, rng: &mut RngStream) -> GenerationState {
    let wealths: Vec<f64> = (0..config.initial_men)
        .map(|_| {
            let mut wealth = rng.normal(config.initial_wealth_mean, config.initial_wealth_std);
            if rng.bernoulli(config.elite_fraction) {
                wealth += rng.normal(config.elite_bonus_mean, config.elite_bonus_std);
            }
            wealth
        })
        .collect();
    GenerationState::new(1, wealths, config.initial_women)
}

/// Sets every man's `wealth_ratio` to `wealth * N / total_wealth`.
///
/// The total is recomputed from the records first. A non-positive total
/// aborts with [`SimError::DegenerateEconomy`].
pub fn compute_wealth_ratios(state: &mut GenerationState) -> Result<()> {
    state.recompute_total_wealth();
    if state.men.is_empty() || state.total_wealth.is_nan() || state.total_wealth <= 0.0 {
        return Err(SimError::DegenerateEconomy {
            generation: state.index,
            total_wealth: state.total_wealth,
        });
    }
    let n = state.men.len() as f64;
    let total = state.total_wealth;
    for man in &mut state.men {
        man.wealth_ratio = man.wealth * n / total;
    }
    Ok(())
}
