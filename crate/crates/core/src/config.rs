//! Simulation parameters and the `key = value` config-file schema.
//!
//! A config file is TOML whose keys are the [`SimConfig`] field names. Every
//! key is optional and unknown keys are rejected:
//!
//! ```toml
//! lambda = 24.0
//! mu = 30.0
//! total_generations = 12
//! mode = "polygyny"   # or "monogamy"
//! seed = 1
//! ```

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MarriageMode {
    Polygyny,
    Monogamy,
}

impl fmt::Display for MarriageMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarriageMode::Polygyny => f.write_str("polygyny"),
            MarriageMode::Monogamy => f.write_str("monogamy"),
        }
    }
}

impl FromStr for MarriageMode {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "polygyny" => Ok(MarriageMode::Polygyny),
            "monogamy" => Ok(MarriageMode::Monogamy),
            other => Err(SimError::InvalidConfig(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    /// Amplitude of the wife-quantity curve.
    pub lambda: f64,
    /// Scale of the wife-quantity curve.
    pub mu: f64,
    pub total_generations: u32,
    /// Children per wife.
    pub average_fertility: f64,
    pub initial_men: usize,
    pub initial_women: usize,
    pub initial_wealth_mean: f64,
    pub initial_wealth_std: f64,
    /// Per-man probability of receiving the elite wealth bonus.
    pub elite_fraction: f64,
    pub elite_bonus_mean: f64,
    pub elite_bonus_std: f64,
    pub marriage_noise_std: f64,
    pub fertility_noise_std: f64,
    /// Career savings added to each son's inheritance.
    pub savings_mean: f64,
    pub savings_std: f64,
    pub mode: MarriageMode,
    pub seed: u64,
    pub population_cap: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            lambda: 24.0,
            mu: 30.0,
            total_generations: 12,
            average_fertility: 3.0,
            initial_men: 100,
            initial_women: 100,
            initial_wealth_mean: 100.0,
            initial_wealth_std: 400.0,
            elite_fraction: 0.1,
            elite_bonus_mean: 5000.0,
            elite_bonus_std: 3000.0,
            marriage_noise_std: 0.2,
            fertility_noise_std: 0.3,
            savings_mean: 10.0,
            savings_std: 8.0,
            mode: MarriageMode::Polygyny,
            seed: 0,
            population_cap: 20_000,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(SimError::InvalidConfig(msg));
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return bad(format!("lambda must be > 0, got {}", self.lambda));
        }
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return bad(format!("mu must be > 0, got {}", self.mu));
        }
        if self.total_generations == 0 {
            return bad("total_generations must be positive".into());
        }
        if !(self.average_fertility > 0.0 && self.average_fertility.is_finite()) {
            return bad(format!(
                "average_fertility must be > 0, got {}",
                self.average_fertility
            ));
        }
        if self.initial_men == 0 || self.initial_women == 0 {
            return bad("initial populations must be positive".into());
        }
        if self.population_cap == 0 {
            return bad("population_cap must be positive".into());
        }
        if self.initial_men > self.population_cap || self.initial_women > self.population_cap {
            return bad("initial population exceeds population_cap".into());
        }
        if !(0.0..=1.0).contains(&self.elite_fraction) {
            return bad(format!(
                "elite_fraction must lie in [0, 1], got {}",
                self.elite_fraction
            ));
        }
        for (name, v) in [
            ("initial_wealth_std", self.initial_wealth_std),
            ("elite_bonus_std", self.elite_bonus_std),
            ("marriage_noise_std", self.marriage_noise_std),
            ("fertility_noise_std", self.fertility_noise_std),
            ("savings_std", self.savings_std),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return bad(format!("{name} must be a finite value >= 0, got {v}"));
            }
        }
        for (name, v) in [
            ("initial_wealth_mean", self.initial_wealth_mean),
            ("elite_bonus_mean", self.elite_bonus_mean),
            ("savings_mean", self.savings_mean),
        ] {
            if !v.is_finite() {
                return bad(format!("{name} must be finite, got {v}"));
            }
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: SimConfig =
            toml::from_str(text).map_err(|e| SimError::InvalidConfig(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SimError::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }
}
