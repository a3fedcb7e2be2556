//! Monte Carlo random sequential adsorption.
//!
//! Each step excites a site drawn uniformly from the currently excitable
//! ones (neutral and farther than `b` from every excited site) until none
//! remain. The excitable set is a dense vector with a slot index per site,
//! so removal is `O(1)` and a trial costs `O(L b)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Configuration, ModelParams, Site};
use crate::numeric::mean_and_std_error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimError {
    ZeroLength,
    ZeroTrials,
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::ZeroLength => write!(f, "lattice length must be at least 1"),
            SimError::ZeroTrials => write!(f, "number of trials must be at least 1"),
        }
    }
}

impl core::error::Error for SimError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub length: usize,
    pub params: ModelParams,
    pub trials: usize,
    pub seed: u64,
}

impl SimConfig {
    pub fn new(
        length: usize,
        params: ModelParams,
        trials: usize,
        seed: u64,
    ) -> Result<Self, SimError> {
        if length == 0 {
            return Err(SimError::ZeroLength);
        }
        if trials == 0 {
            return Err(SimError::ZeroTrials);
        }
        Ok(SimConfig {
            length,
            params,
            trials,
            seed,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimSummary {
    pub mean_density: f64,
    /// Sample standard deviation over `sqrt(trials)`.
    pub std_error: f64,
    pub trials: usize,
    pub seed: u64,
    /// In trial order.
    pub per_trial_densities: Vec<f64>,
}

impl SimSummary {
    pub fn from_densities(config: &SimConfig, densities: Vec<f64>) -> Self {
        let (mean_density, std_error) = mean_and_std_error(&densities);
        SimSummary {
            mean_density,
            std_error,
            trials: config.trials,
            seed: config.seed,
            per_trial_densities: densities,
        }
    }
}

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// Seed of trial `t`: output number `t + 1` of a SplitMix64 stream started
/// at `master`. Depends only on `(master, t)`.
pub fn trial_seed(master: u64, t: u64) -> u64 {
    let mut z = master.wrapping_add(t.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn trial_rng(master: u64, t: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(master, t))
}

const ABSENT: usize = usize::MAX;

/// One run of the dynamics to a jammed configuration.
pub fn run_trial<R: Rng + ?Sized>(
    length: usize,
    params: ModelParams,
    rng: &mut R,
) -> Configuration {
    let b = params.b();
    let mut sites = vec![Site::Neutral; length];
    let mut excitable: Vec<usize> = (0..length).collect();
    let mut slot: Vec<usize> = (0..length).collect();
    while !excitable.is_empty() {
        let s = excitable[rng.random_range(0..excitable.len())];
        sites[s] = Site::Excited;
        for j in s.saturating_sub(b)..=(s + b).min(length - 1) {
            let k = slot[j];
            if k == ABSENT {
                continue;
            }
            let last = *excitable.last().expect("non-empty");
            excitable.swap_remove(k);
            if last != j {
                slot[last] = k;
            }
            slot[j] = ABSENT;
        }
    }
    Configuration::new(sites)
}

/// Final density of trial `t`.
pub fn simulate_trial(config: &SimConfig, t: u64) -> f64 {
    let mut rng = trial_rng(config.seed, t);
    let jammed = run_trial(config.length, config.params, &mut rng);
    jammed.excited_count() as f64 / config.length as f64
}

pub fn simulate_rsa(config: &SimConfig) -> SimSummary {
    let densities = (0..config.trials as u64)
        .map(|t| simulate_trial(config, t))
        .collect();
    SimSummary::from_densities(config, densities)
}
