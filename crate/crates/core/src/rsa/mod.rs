//! Random sequential adsorption and its jamming limits.
//!
//! [`simulate`] runs the dynamics on a finite row; [`limits`] evaluates the
//! infinite-row jamming density by quadrature, including Rényi's parking
//! constant as the large-`b` limit of `b * rho_inf`.

pub mod limits;
pub mod simulate;

pub use limits::{
    jamming_limit_quadrature, kmer_jamming_limit, kmer_jamming_limit_direct, renyi_constant,
    renyi_truncated, scaled_jamming_limit, scaled_limit_table, LimitError, ScaledLimitRow,
    DEFAULT_TOLERANCE,
};
pub use simulate::{
    run_trial, simulate_rsa, simulate_trial, trial_rng, trial_seed, SimConfig, SimError, SimSummary,
};
