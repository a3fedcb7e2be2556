//! Exact enumeration, configurational entropy and jamming limits for the
//! one-dimensional Rydberg-blockade model and its k-mer deposition twin.
//!
//! A configuration is a row of `L` sites, each neutral or excited. With
//! blockade range `b`, two excited sites must differ in index by at least
//! `b + 1`; a configuration is *jammed* when no further site can be excited.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`]: configurations, validity, jammedness, gap decomposition and
//!   the brute-force enumerator that every other count is checked against.
//! * [`genfunc`]: exact big-integer coefficients of the bivariate generating
//!   functions, two independent expansion routes, and the growth rate `w_b`.
//! * [`complexity`]: the complexity function `f(rho)` through the positive
//!   root of a degree-`b` polynomial, its maximiser `rho_star`, the explicit
//!   `b = 1, 2` forms and the k-mer reparameterisation.
//! * [`entropy`]: the discrete and continuous constrained entropy problems
//!   that independently pin down `f(rho)`.
//! * [`rsa`]: random sequential adsorption and the quadratures for the
//!   jamming limit and Rényi's parking constant.
//!
//! Everything here is `no_std` (with `alloc`) and free of IO. File formats,
//! parallel drivers and the command line live in the `rydberg-jam` crate.
//!
//! All logarithms are natural; complexities are in nats per site.

#![no_std]

extern crate alloc;

pub mod complexity;
pub mod entropy;
pub mod genfunc;
pub mod model;
pub mod numeric;
pub mod quadrature;
pub mod roots;
pub mod rsa;

pub use complexity::{
    complexity, kmer_complexity, kmer_rho_star, rho_star, ComplexityError, ComplexityPoint,
    EquilibriumDensity,
};
pub use entropy::{
    continuous_optimizer, discrete_complexity_estimate, exact_log_density, feasible_set,
    multinomial, shannon_entropy, EntropyError, LagrangeSolution, ProbabilityVector,
};
pub use genfunc::{growth_rate, jammed_counts, kmer_counts, total_counts, CoeffTable, GrowthRate};
pub use model::{
    enumerate_jammed, gap_profile, is_blockade_valid, is_jammed, Configuration, GapProfile,
    ModelError, ModelParams, Site,
};
pub use quadrature::{QuadratureError, QuadratureResult};
pub use rsa::{simulate_rsa, SimConfig, SimSummary};
