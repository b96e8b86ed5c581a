//! Generational agent-based model of wealth-driven marriage with patrilineal
//! inheritance, plus a closed-form model of how a sterilizing sexually
//! transmitted infection scales birth rates under monogamy and polygyny.
//!
//! One generation step computes each man's wealth relative to the mean,
//! allocates wives, records metrics, then produces children and splits each
//! father's wealth evenly among his sons.

pub mod cli;
pub mod config;
pub mod demography;
pub mod error;
pub mod marriage;
pub mod metrics;
pub mod output;
pub mod population;
pub mod rng;
pub mod sim;
pub mod std_model;

pub use config::{MarriageMode, SimConfig};
pub use error::{Result, SimError};
pub use metrics::GenerationMetrics;
pub use rng::RngStream;
pub use sim::{run_simulation, RunReport, Termination};
