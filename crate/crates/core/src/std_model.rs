//! Closed-form birth-rate model for a sexually transmitted, sterilizing
//! infection under monogamy and polygyny.
//!
//! A family is one husband and `q` wives. If any member is infected from
//! outside, everyone in the family eventually is, and an infected woman
//! becomes sterile with probability `γ`. Coefficients are returned without
//! the baseline birth rate `α`; callers scale.

use crate::error::{Result, SimError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StdParams {
    /// Baseline lifetime births per woman.
    pub alpha: f64,
    /// Probability a wife is infected from outside the family.
    pub beta: f64,
    /// Probability a husband is infected from outside the family.
    pub beta_m: f64,
    /// Probability an infected woman becomes sterile.
    pub gamma: f64,
    /// Average wives per family; real-valued.
    pub q: f64,
}

impl StdParams {
    pub fn new(alpha: f64, beta: f64, beta_m: f64, gamma: f64, q: f64) -> Result<Self> {
        let p = Self {
            alpha,
            beta,
            beta_m,
            gamma,
            q,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let prob = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(SimError::Domain(format!(
                    "{name} must lie in [0, 1], got {v}"
                )))
            }
        };
        prob("beta", self.beta)?;
        prob("beta_m", self.beta_m)?;
        prob("gamma", self.gamma)?;
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(SimError::Domain(format!(
                "alpha must be > 0, got {}",
                self.alpha
            )));
        }
        if !(self.q >= 1.0 && self.q.is_finite()) {
            return Err(SimError::Domain(format!("q must be >= 1, got {}", self.q)));
        }
        Ok(())
    }

    pub fn with_q(self, q: f64) -> Self {
        Self { q, ..self }
    }
}

impl Default for StdParams {
    fn default() -> Self {
        Self {
            alpha: 3.0,
            beta: 0.04,
            beta_m: 0.04,
            gamma: 0.2,
            q: 8.0,
        }
    }
}

/// `1 − β̃γ`: birth-rate coefficient when the husband is the entry point.
/// Does not depend on `q`.
pub fn husband_factor_coefficient(p: &StdParams) -> f64 {
    1.0 - p.beta_m * p.gamma
}

/// `1 + ((1 − β)^q − 1)γ`: birth-rate coefficient when a wife is the entry
/// point. `(1 − β)^q` is the chance that no wife is infected.
pub fn wife_factor_coefficient(p: &StdParams) -> f64 {
    1.0 + ((1.0 - p.beta).powf(p.q) - 1.0) * p.gamma
}

/// One generation of `ξ(k+1) = (α/2)·c·ξ(k)`, half the population being women.
pub fn population_step(xi_k: f64, p: &StdParams) -> f64 {
    p.alpha / 2.0 * wife_factor_coefficient(p) * xi_k
}

/// `ξ(k) = (α/2)^(k−1) · c^(k−1) · ξ(1)` for `k ≥ 1`.
pub fn population_closed_form(xi_1: f64, k: u32, p: &StdParams) -> f64 {
    assert!(k >= 1, "generations are numbered from 1");
    let n = (k - 1) as i32;
    (p.alpha / 2.0).powi(n) * wife_factor_coefficient(p).powi(n) * xi_1
}

/// Monogamous over polygynous population after `k` generations from equal
/// starts: `((1 − βγ) / (1 + ((1 − β)^q − 1)γ))^(k−1)`.
pub fn monogamy_polygyny_ratio(k: u32, p: &StdParams) -> Result<f64> {
    if k < 1 {
        return Err(SimError::Domain("generations are numbered from 1".into()));
    }
    let denominator = wife_factor_coefficient(p);
    if denominator.is_nan() || denominator <= 0.0 {
        return Err(SimError::Domain(format!(
            "polygynous birth-rate coefficient is {denominator}; ratio undefined"
        )));
    }
    let per_generation = (1.0 - p.beta * p.gamma) / denominator;
    Ok(per_generation.powi((k - 1) as i32))
}

/// Wife-factor coefficient at `q = 1, 2, …, q_max`.
pub fn curve_fig4(p: &StdParams, q_max: u32) -> Vec<(u32, f64)> {
    (1..=q_max)
        .map(|q| (q, wife_factor_coefficient(&p.with_q(f64::from(q)))))
        .collect()
}

/// Monogamy/polygyny ratio at `k = 1..=k_max`, one column per parameter set.
pub fn curve_fig5(k_max: u32, params: &[StdParams]) -> Result<Vec<(u32, Vec<f64>)>> {
    (1..=k_max)
        .map(|k| {
            let ratios = params
                .iter()
                .map(|p| monogamy_polygyny_ratio(k, p))
                .collect::<Result<Vec<_>>>()?;
            Ok((k, ratios))
        })
        .collect()
}
