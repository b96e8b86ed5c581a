//! Deterministic random streams.
//!
//! Every stochastic step draws from an [`RngStream`]. The generator is
//! ChaCha8 seeded through `seed_from_u64`, whose output is fixed by the
//! ChaCha reference and does not depend on platform or word size. A run uses
//! two independent ChaCha streams of the same key:
//!
//! * stream [`INIT_STREAM`] draws the initial wealth of generation 1,
//! * stream [`DYNAMICS_STREAM`] draws everything after that.
//!
//! Paired monogamy/polygyny comparisons therefore share generation 1 exactly
//! and diverge afterwards.
//!
//! Uniform reals take the top 53 bits of a `u64`. Gaussian deviates use the
//! Marsaglia polar method and cache the second deviate of each pair. Bounded
//! integers use rejection sampling on the full `u64` range, so they carry no
//! modulo bias.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const INIT_STREAM: u64 = 0;
pub const DYNAMICS_STREAM: u64 = 1;

#[derive(Debug, Clone)]
pub struct RngStream {
    inner: ChaCha8Rng,
    spare_normal: Option<f64>,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    /// Independent sub-stream `stream` of the generator keyed by `seed`.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self {
            inner,
            spare_normal: None,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform real in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, n)`. Panics if `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0) has no valid outcome");
        // Largest multiple of n that fits; draws at or above it are rejected.
        let zone = u64::MAX - (u64::MAX % n + 1) % n;
        loop {
            let v = self.next_u64();
            if v <= zone {
                return v % n;
            }
        }
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let factor = (-2.0 * s.ln() / s).sqrt();
                self.spare_normal = Some(v * factor);
                return u * factor;
            }
        }
    }

    /// Gaussian deviate. A zero `std` returns `mean` exactly and consumes
    /// nothing from the stream.
    pub fn normal(&mut self, mean: f64, std: f64) -> f64 {
        if std == 0.0 {
            return mean;
        }
        mean + std * self.standard_normal()
    }
}
