//! Work limits deciding between exhaustive and sampled scans.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DEFAULT_MAX_CARRIER: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest number of elementary steps a scan may take before sampling.
    pub max_work: u64,
    /// Sample count for sampled scans.
    pub samples: usize,
    pub seed: u64,
    /// Largest carrier that whole-algebra scans will enumerate.
    pub max_carrier: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_work: 20_000_000,
            samples: 20_000,
            seed: 0x5eed,
            max_carrier: DEFAULT_MAX_CARRIER,
        }
    }
}

impl Budget {
    /// Default budget with `EA_MAX_CARRIER` applied.
    pub fn from_env() -> Self {
        let max_carrier = std::env::var("EA_MAX_CARRIER")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_CARRIER);
        Budget {
            max_carrier,
            ..Budget::default()
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Budget { seed, ..self }
    }

    /// A generator for one scan; `salt` keeps scans independent.
    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    pub fn allows(&self, work: u64, carrier: usize) -> bool {
        work <= self.max_work && carrier <= self.max_carrier
    }
}
