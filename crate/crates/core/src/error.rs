use thiserror::Error;

/// Failures that abort a simulation or reject an input.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Total male wealth is not positive, so wealth ratios have no meaning.
    #[error("degenerate economy in generation {generation}: total wealth {total_wealth}")]
    DegenerateEconomy { generation: u32, total_wealth: f64 },

    #[error("population cap {cap} exceeded in generation {generation}: {men} men, {women} women")]
    PopulationCap {
        generation: u32,
        cap: usize,
        men: usize,
        women: usize,
    },

    #[error("metric undefined: {0}")]
    UndefinedMetric(&'static str),

    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T, E = SimError> = std::result::Result<T, E>;
