//! Rayon drivers. Results match the sequential core functions exactly:
//! enumeration merges integer counts, and simulation collects per-trial
//! densities in trial order before summarising.

use rayon::prelude::*;

use rydberg_jam_core::complexity::{complexity, ComplexityError, ComplexityPoint};
use rydberg_jam_core::model::{
    enumerate_mask_range, JammedCounts, ModelError, ModelParams, MAX_BITMASK_LENGTH,
};
use rydberg_jam_core::rsa::{simulate_trial, SimConfig, SimSummary};

/// Masks per work item.
const MASK_CHUNK: u64 = 1 << 16;

/// Brute-force `J_{N,L}` over `2^L` masks, split into chunks.
pub fn enumerate_parallel(
    length: usize,
    params: ModelParams,
    cap: usize,
) -> Result<JammedCounts, ModelError> {
    if length > cap.min(MAX_BITMASK_LENGTH) {
        return Err(ModelError::CapExceeded { length, cap });
    }
    let mut total = enumerate_mask_range(length, params, 0..0)?;
    let end = 1u64 << length;
    let chunks: Vec<u64> = (0..end.div_ceil(MASK_CHUNK)).collect();
    let parts: Result<Vec<JammedCounts>, ModelError> = chunks
        .par_iter()
        .map(|&c| {
            let lo = c * MASK_CHUNK;
            enumerate_mask_range(length, params, lo..(lo + MASK_CHUNK).min(end))
        })
        .collect();
    for part in parts? {
        total.merge(&part);
    }
    Ok(total)
}

pub fn simulate_parallel(config: &SimConfig) -> SimSummary {
    let densities: Vec<f64> = (0..config.trials as u64)
        .into_par_iter()
        .map(|t| simulate_trial(config, t))
        .collect();
    SimSummary::from_densities(config, densities)
}

/// `complexity` over a grid, in grid order.
pub fn complexity_grid(
    params: ModelParams,
    rhos: &[f64],
) -> Result<Vec<ComplexityPoint>, ComplexityError> {
    rhos.par_iter()
        .map(|&rho| complexity(params, rho))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rydberg_jam_core::model::enumerate_jammed;
    use rydberg_jam_core::rsa::simulate_rsa;

    #[test]
    fn parallel_enumeration_matches() {
        for b in 1..=3 {
            let p = ModelParams::new(b).unwrap();
            for l in [0, 1, 5, 17, 20] {
                assert_eq!(
                    enumerate_parallel(l, p, 26).unwrap(),
                    enumerate_jammed(l, p).unwrap()
                );
            }
        }
        let p = ModelParams::new(1).unwrap();
        assert!(enumerate_parallel(30, p, 26).is_err());
    }

    #[test]
    fn parallel_simulation_bit_identical() {
        let cfg = SimConfig::new(5000, ModelParams::new(2).unwrap(), 24, 11).unwrap();
        let a = simulate_parallel(&cfg);
        let b = simulate_rsa(&cfg);
        assert_eq!(a, b);
        let bits = |s: &SimSummary| {
            s.per_trial_densities
                .iter()
                .map(|d| d.to_bits())
                .collect::<Vec<_>>()
        };
        assert_eq!(bits(&a), bits(&b));
        assert_eq!(a.mean_density.to_bits(), b.mean_density.to_bits());
    }
}
