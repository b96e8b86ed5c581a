//! Reproduction and patrilineal inheritance.

use crate::config::SimConfig;
use crate::error::{Result, SimError};
use crate::marriage::MatchOutcome;
use crate::population::{GenerationState, ManRecord};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Family {
    pub father_index: usize,
    pub wife_count: u32,
    pub children_boys: u32,
    pub children_girls: u32,
}

impl Family {
    pub fn new(father_index: usize, wife_count: u32) -> Self {
        Self {
            father_index,
            wife_count,
            children_boys: 0,
            children_girls: 0,
        }
    }

    pub fn children(&self) -> u32 {
        self.children_boys + self.children_girls
    }
}

/// Draws one family-level fertility noise `g ~ N(1, noise_std)`, sets the
/// number of children to `max(0, round(wives · fertility · g))`, then flips a
/// fair coin per child for its sex.
pub fn reproduce(
    mut family: Family,
    average_fertility: f64,
    fertility_noise_std: f64,
    rng: &mut RngStream,
) -> Family {
    debug_assert!(family.wife_count >= 1);
    let noise = rng.normal(1.0, fertility_noise_std);
    let children = (f64::from(family.wife_count) * average_fertility * noise)
        .round()
        .max(0.0) as u32;
    let boys = (0..children).filter(|_| rng.bernoulli(0.5)).count() as u32;
    family.children_boys = boys;
    family.children_girls = children - boys;
    family
}

/// Splits the father's wealth evenly among his sons and adds each son's own
/// savings. With no sons the wealth leaves the economy.
pub fn inherit(
    father_wealth: f64,
    son_count: u32,
    savings_mean: f64,
    savings_std: f64,
    rng: &mut RngStream,
) -> Vec<f64> {
    if son_count == 0 {
        return Vec::new();
    }
    let share = father_wealth / f64::from(son_count);
    (0..son_count)
        .map(|_| share + rng.normal(savings_mean, savings_std))
        .collect()
}

/// The next generation plus the wealth bookkeeping used to audit it.
#[derive(Debug, Clone, PartialEq)]
pub struct Succession {
    pub next: GenerationState,
    /// Sum of wealth held by fathers with at least one son.
    pub bequeathed: f64,
    /// Sum of every savings draw added to a son.
    pub savings: f64,
}

/// Builds generation `index + 1` from the married men of `state`.
///
/// Fathers are visited in index order; each family draws its children and
/// then its sons' savings before the next family is visited. Son counts are
/// written back into `state`. The result may be extinct (no men or no women),
/// which the caller treats as a normal end of the run.
pub fn advance_generation(
    state: &mut GenerationState,
    outcome: &MatchOutcome,
    config: &SimConfig,
    rng: &mut RngStream,
) -> Result<Succession> {
    debug_assert_eq!(outcome.assignments.len(), state.men.len());
    let mut sons: Vec<ManRecord> = Vec::new();
    let mut girls = 0usize;
    let mut bequeathed = 0.0;
    let mut savings = 0.0;

    for (index, (man, &wives)) in state.men.iter_mut().zip(&outcome.assignments).enumerate() {
        man.wife_count = wives;
        man.son_count = 0;
        if wives == 0 {
            continue;
        }
        let family = reproduce(
            Family::new(index, wives),
            config.average_fertility,
            config.fertility_noise_std,
            rng,
        );
        man.son_count = family.children_boys;
        girls += family.children_girls as usize;

        let shares = inherit(
            man.wealth,
            family.children_boys,
            config.savings_mean,
            config.savings_std,
            rng,
        );
        if !shares.is_empty() {
            bequeathed += man.wealth;
            let share = man.wealth / f64::from(family.children_boys);
            savings += shares.iter().map(|w| w - share).sum::<f64>();
        }
        sons.extend(shares.into_iter().map(ManRecord::with_wealth));

        if sons.len() > config.population_cap || girls > config.population_cap {
            return Err(SimError::PopulationCap {
                generation: state.index + 1,
                cap: config.population_cap,
                men: sons.len(),
                women: girls,
            });
        }
    }

    let mut next = GenerationState {
        index: state.index + 1,
        men: sons,
        women_count: girls,
        total_wealth: 0.0,
    };
    next.recompute_total_wealth();
    Ok(Succession {
        next,
        bequeathed,
        savings,
    })
}
