//! Wealth-driven spouse allocation.
//!
//! A man whose wealth equals the generation mean expects exactly one wife.
//! Above the mean the expectation grows with slope below one and saturates;
//! below the mean it falls towards zero and beneath.

use crate::config::MarriageMode;
use crate::population::GenerationState;
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarriageCurveParams {
    pub lambda: f64,
    pub mu: f64,
}

impl MarriageCurveParams {
    pub fn new(lambda: f64, mu: f64) -> Self {
        debug_assert!(lambda > 0.0 && mu > 0.0);
        Self { lambda, mu }
    }

    /// Value approached by [`expected_wives`] as the wealth ratio grows.
    pub fn saturation(&self) -> f64 {
        self.lambda * (1.0 - (1.0 / self.mu).tanh()) + 1.0
    }
}

impl Default for MarriageCurveParams {
    fn default() -> Self {
        Self::new(24.0, 30.0)
    }
}

/// `λ·tanh(x/μ) − λ·tanh(1/μ) + 1`, where `x` is wealth over mean wealth.
pub fn expected_wives(x: f64, params: MarriageCurveParams) -> f64 {
    let MarriageCurveParams { lambda, mu } = params;
    // At x = 1 both tanh terms are bit-identical, so the result is exactly 1.
    lambda * (x / mu).tanh() - lambda * (1.0 / mu).tanh() + 1.0
}

/// `round(expected · g)` with `g ~ N(1, noise_std)`, rounding half away from
/// zero. May be negative; callers clamp.
pub fn sample_wife_count(expected: f64, noise_std: f64, rng: &mut RngStream) -> i64 {
    let noise = rng.normal(1.0, noise_std);
    (expected * noise).round() as i64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchOutcome {
    /// Wife count per man, indexed like `GenerationState::men`.
    pub assignments: Vec<u32>,
    pub unmarried_women: usize,
    pub unmarried_men: usize,
}

impl MatchOutcome {
    pub fn married_women(&self) -> usize {
        self.assignments.iter().map(|&q| q as usize).sum()
    }

    /// Copies the wife counts into the generation's records.
    pub fn apply(&self, state: &mut GenerationState) {
        debug_assert_eq!(self.assignments.len(), state.men.len());
        for (man, &q) in state.men.iter_mut().zip(&self.assignments) {
            man.wife_count = q;
        }
    }
}

/// Allocates the generation's women among its men.
///
/// Men are drawn uniformly without replacement from the pool of unmatched
/// men (`swap_remove` on the pool). In polygyny mode each drawn man gets
/// `sample_wife_count(expected_wives(ratio))` wives, clamped to
/// `[0, women remaining]`; in monogamy mode he gets one. Matching stops once
/// either the women or the pool run out. Wealth ratios must be current.
pub fn match_generation(
    state: &GenerationState,
    mode: MarriageMode,
    params: MarriageCurveParams,
    noise_std: f64,
    rng: &mut RngStream,
) -> MatchOutcome {
    let mut assignments = vec![0u32; state.men.len()];
    let mut pool: Vec<usize> = (0..state.men.len()).collect();
    let mut women_left = state.women_count;

    while women_left > 0 && !pool.is_empty() {
        let pick = rng.below(pool.len() as u64) as usize;
        let man = pool.swap_remove(pick);
        let wives = match mode {
            MarriageMode::Monogamy => 1,
            MarriageMode::Polygyny => {
                let expected = expected_wives(state.men[man].wealth_ratio, params);
                let sampled = sample_wife_count(expected, noise_std, rng);
                sampled.clamp(0, women_left as i64) as usize
            }
        };
        assignments[man] = wives as u32;
        women_left -= wives;
    }

    let unmarried_men = assignments.iter().filter(|&&q| q == 0).count();
    MatchOutcome {
        assignments,
        unmarried_women: women_left,
        unmarried_men,
    }
}
