//! Constrained entropy problems behind `f(rho)`.
//!
//! A jammed configuration of `N` blocks and length `L` has a gap profile
//! `(M_0, ..., M_b)` in
//!
//! ```text
//! R_{N,L} = { M >= 0 : sum M_a = N, sum a M_a = L - (b+1) N }
//! ```
//!
//! and each profile accounts for `N! / prod M_a!` arrangements. Maximising
//! the multinomial over `R_{N,L}` gives `(N/L) H(M/N)` as a finite-size
//! estimate of `f(N/L)`. The continuous relaxation is solved through the
//! same polynomial root as [`crate::complexity`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::complexity::{complexity, ComplexityError};
use crate::genfunc::jammed_count;
use crate::model::{GapProfile, ModelError, ModelParams};
use crate::numeric::{ln_biguint, ln_geometric_sum};

/// Tolerance on `sum p_i = 1`.
pub const PROBABILITY_SUM_TOLERANCE: f64 = 1e-12;

/// Tolerance on both constraints of the continuous solution.
pub const CONSTRAINT_TOLERANCE: f64 = 1e-10;

/// Feasible-set size up to which the discrete maximum is found exhaustively.
pub const EXHAUSTIVE_LIMIT: f64 = 1e6;

#[derive(Debug, Clone, PartialEq)]
pub enum EntropyError {
    InvalidProbabilities,
    SumMismatch {
        expected: u64,
        found: u64,
    },
    EmptyFeasibleSet {
        n: usize,
        l: usize,
    },
    ZeroLength,
    ZeroCount {
        n: usize,
        l: usize,
    },
    /// Density outside `(1/(2b+1), 1/(b+1)]`.
    OutOfSupport {
        rho: f64,
    },
    ConstraintViolation {
        residual: f64,
    },
    Complexity(ComplexityError),
    Model(ModelError),
}

impl fmt::Display for EntropyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntropyError::InvalidProbabilities => {
                write!(f, "probabilities must be non-negative and sum to 1")
            }
            EntropyError::SumMismatch { expected, found } => {
                write!(f, "profile sums to {found}, expected {expected}")
            }
            EntropyError::EmptyFeasibleSet { n, l } => {
                write!(f, "no jammed configurations with N = {n}, L = {l}")
            }
            EntropyError::ZeroLength => write!(f, "length must be positive"),
            EntropyError::ZeroCount { n, l } => write!(f, "J_(N={n}, L={l}) is zero"),
            EntropyError::OutOfSupport { rho } => {
                write!(f, "density {rho} is outside the support of f")
            }
            EntropyError::ConstraintViolation { residual } => {
                write!(f, "constraint residual {residual:e} exceeds tolerance")
            }
            EntropyError::Complexity(e) => write!(f, "{e}"),
            EntropyError::Model(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for EntropyError {}

impl From<ComplexityError> for EntropyError {
    fn from(e: ComplexityError) -> Self {
        EntropyError::Complexity(e)
    }
}

impl From<ModelError> for EntropyError {
    fn from(e: ModelError) -> Self {
        EntropyError::Model(e)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(p: Vec<f64>) -> Result<Self, EntropyError> {
        let sum: f64 = p.iter().sum();
        if p.is_empty()
            || p.iter().any(|x| x.is_nan() || *x < 0.0)
            || libm::fabs(sum - 1.0) > PROBABILITY_SUM_TOLERANCE
        {
            return Err(EntropyError::InvalidProbabilities);
        }
        Ok(ProbabilityVector(p))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// `-sum p_i ln p_i`, with `0 ln 0 = 0`.
pub fn shannon_entropy(p: &ProbabilityVector) -> f64 {
    p.0.iter()
        .map(|&x| if x == 0.0 { 0.0 } else { -x * libm::log(x) })
        .sum()
}

/// `N! / prod M_a!` as a running product of binomials.
pub fn multinomial(n: u64, profile: &GapProfile) -> Result<BigUint, EntropyError> {
    let found = profile.blocks();
    if found != n {
        return Err(EntropyError::SumMismatch { expected: n, found });
    }
    let mut acc = BigUint::from(1u32);
    let mut running = 0u64;
    for &m in profile.counts() {
        // acc * running / j stays integral: it is C(running, j) times the
        // previous partial multinomial.
        for j in 1..=m {
            running += 1;
            acc *= running;
            acc /= j;
        }
    }
    Ok(acc)
}

/// `L - (b+1) N`, or `None` when the feasible set is empty.
fn gap_budget(n: usize, l: usize, params: ModelParams) -> Option<u64> {
    let b = params.b();
    let d = l.checked_sub((b + 1) * n)?;
    (d <= b * n).then_some(d as u64)
}

/// Calls `visit` with every `(M_0, ..., M_b)` in `R_{N,L}`, recursing over
/// `M_b, ..., M_2`; `M_1` and `M_0` are then determined.
pub fn for_each_feasible<V: FnMut(&[u64])>(n: usize, l: usize, params: ModelParams, mut visit: V) {
    let Some(d) = gap_budget(n, l, params) else {
        return;
    };
    let b = params.b();
    let mut m = vec![0u64; b + 1];
    fn rec<V: FnMut(&[u64])>(a: usize, d_rem: u64, n_rem: u64, m: &mut [u64], visit: &mut V) {
        if a == 1 {
            if d_rem <= n_rem {
                m[1] = d_rem;
                m[0] = n_rem - d_rem;
                visit(m);
            }
            return;
        }
        let top = (d_rem / a as u64).min(n_rem);
        for k in 0..=top {
            m[a] = k;
            rec(a - 1, d_rem - k * a as u64, n_rem - k, m, visit);
        }
        m[a] = 0;
    }
    if b == 0 {
        return;
    }
    rec(b, d, n as u64, &mut m, &mut visit);
}

/// `R_{N,L}` materialised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleSet {
    pub n: usize,
    pub l: usize,
    pub b: usize,
    pub points: Vec<GapProfile>,
}

pub fn feasible_set(n: usize, l: usize, params: ModelParams) -> FeasibleSet {
    let mut points = Vec::new();
    for_each_feasible(n, l, params, |m| {
        points.push(GapProfile::new(m.to_vec(), params).expect("length b + 1"));
    });
    FeasibleSet {
        n,
        l,
        b: params.b(),
        points,
    }
}

/// `-sum M_a ln M_a`; the entropy part of `ln(N! / prod M_a!)`.
fn neg_mlnm(m: &[u64]) -> f64 {
    m.iter()
        .map(|&x| {
            if x == 0 {
                0.0
            } else {
                -(x as f64) * libm::log(x as f64)
            }
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteEstimate {
    /// `max (N/L) H(M/N)` over the feasible set.
    pub value: f64,
    pub argmax: GapProfile,
    /// False when the maximum came from local search.
    pub exhaustive: bool,
}

/// Upper estimate of `|R_{N,L}|`: `prod_{a=2}^{b} (D/a + 1)`.
fn feasible_size_estimate(d: u64, b: usize) -> f64 {
    (2..=b).map(|a| d as f64 / a as f64 + 1.0).product()
}

pub fn discrete_complexity_estimate(
    n: usize,
    l: usize,
    params: ModelParams,
) -> Result<DiscreteEstimate, EntropyError> {
    if l == 0 {
        return Err(EntropyError::ZeroLength);
    }
    let d = gap_budget(n, l, params).ok_or(EntropyError::EmptyFeasibleSet { n, l })?;
    let exhaustive = feasible_size_estimate(d, params.b()) <= EXHAUSTIVE_LIMIT;
    let best = if exhaustive {
        let mut best: Option<(f64, Vec<u64>)> = None;
        for_each_feasible(n, l, params, |m| {
            let g = neg_mlnm(m);
            if best.as_ref().map_or(true, |(bg, _)| g > *bg) {
                best = Some((g, m.to_vec()));
            }
        });
        best.expect("feasible set is non-empty").1
    } else {
        local_search(start_point(n, d, params), params)
    };
    let nf = n as f64;
    let ln_n = if n == 0 { 0.0 } else { libm::log(nf) };
    let value = (nf * ln_n + neg_mlnm(&best)) / l as f64;
    Ok(DiscreteEstimate {
        value,
        argmax: GapProfile::new(best, params)?,
        exhaustive,
    })
}

/// Feasible profile near `N p*`, or a greedy one when `p*` is unavailable.
fn start_point(n: usize, d: u64, params: ModelParams) -> Vec<u64> {
    let b = params.b();
    let n64 = n as u64;
    let rho = n as f64 / (d as f64 + ((b + 1) * n) as f64);
    let mut m = match continuous_optimizer(params, rho) {
        Ok(sol) => sol
            .p_star
            .as_slice()
            .iter()
            .map(|p| libm::floor(p * n as f64) as u64)
            .collect(),
        Err(_) => vec![0u64; b + 1],
    };
    // Fix the block count on M_0, then move blocks between gap sizes until
    // the gap budget matches; every step keeps sum M_a = N.
    let count: u64 = m.iter().sum();
    if count > n64 {
        m = vec![0; b + 1];
    }
    m[0] += n64 - m.iter().sum::<u64>();
    let mut moment: u64 = m.iter().enumerate().map(|(a, &x)| a as u64 * x).sum();
    while moment < d {
        let a = (0..b).find(|&a| m[a] > 0).expect("d <= b N");
        let step = (d - moment).min((b - a) as u64);
        m[a] -= 1;
        m[a + step as usize] += 1;
        moment += step;
    }
    while moment > d {
        let a = (1..=b).rev().find(|&a| m[a] > 0).expect("d >= 0");
        let step = (moment - d).min(a as u64);
        m[a] -= 1;
        m[a - step as usize] += 1;
        moment -= step;
    }
    m
}

/// Hill climbing on `-sum M ln M` with moves `+e_i + e_j - e_k - e_l`,
/// `i + j = k + l`, which preserve both constraints.
fn local_search(mut m: Vec<u64>, params: ModelParams) -> Vec<u64> {
    let b = params.b();
    let term = |x: u64| {
        if x == 0 {
            0.0
        } else {
            -(x as f64) * libm::log(x as f64)
        }
    };
    loop {
        let mut best_gain = 0.0;
        let mut best_move = None;
        for i in 0..=b {
            for j in i..=b {
                let s = i + j;
                for k in s.saturating_sub(b)..=s / 2 {
                    let l = s - k;
                    if k == i || k == j {
                        continue;
                    }
                    let mut delta = [(i, 1i64), (j, 1), (k, -1), (l, -1)];
                    delta.sort_unstable_by_key(|d| d.0);
                    // Aggregate coincident indices.
                    let mut agg: Vec<(usize, i64)> = Vec::with_capacity(4);
                    for (idx, dv) in delta {
                        match agg.last_mut() {
                            Some(last) if last.0 == idx => last.1 += dv,
                            _ => agg.push((idx, dv)),
                        }
                    }
                    if agg.iter().any(|&(idx, dv)| (m[idx] as i64) + dv < 0) {
                        continue;
                    }
                    let gain: f64 = agg
                        .iter()
                        .map(|&(idx, dv)| term((m[idx] as i64 + dv) as u64) - term(m[idx]))
                        .sum();
                    if gain > best_gain + 1e-12 {
                        best_gain = gain;
                        best_move = Some(agg);
                    }
                }
            }
        }
        match best_move {
            Some(agg) => {
                for (idx, dv) in agg {
                    m[idx] = (m[idx] as i64 + dv) as u64;
                }
            }
            None => return m,
        }
    }
}

/// `ln J_{N,L} / L` from the exact count.
pub fn exact_log_density(n: usize, l: usize, params: ModelParams) -> Result<f64, EntropyError> {
    if l == 0 {
        return Err(EntropyError::ZeroLength);
    }
    let count = jammed_count(params, n, l);
    if count.bits() == 0 {
        return Err(EntropyError::ZeroCount { n, l });
    }
    Ok(ln_biguint(&count) / l as f64)
}

/// Maximiser of `rho H(p)` subject to `sum p_i = 1` and
/// `sum i p_i = 1/rho - (b+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangeSolution {
    pub b: usize,
    pub rho: f64,
    pub lambda: f64,
    /// Infinite in the degenerate case.
    pub mu: f64,
    /// `exp(-mu / rho)`.
    pub z: f64,
    /// `p_i = p_0 z^i`.
    pub p_star: ProbabilityVector,
    /// `rho = 1/(b+1)`: all mass on gap size 0.
    pub degenerate: bool,
}

impl LagrangeSolution {
    /// `rho + lambda + mu (1/rho - (b+1))`.
    pub fn f_from_multipliers(&self) -> f64 {
        if self.degenerate {
            return 0.0;
        }
        let b1 = (self.b + 1) as f64;
        self.rho + self.lambda + self.mu * (1.0 / self.rho - b1)
    }

    /// `rho H(p*)`.
    pub fn f_from_entropy(&self) -> f64 {
        self.rho * shannon_entropy(&self.p_star)
    }
}

pub fn continuous_optimizer(
    params: ModelParams,
    rho: f64,
) -> Result<LagrangeSolution, EntropyError> {
    let b = params.b();
    let point = complexity(params, rho)?;
    let Some(z) = point.z else {
        return Err(EntropyError::OutOfSupport { rho });
    };
    if z == 0.0 {
        let mut p = vec![0.0; b + 1];
        p[0] = 1.0;
        return Ok(LagrangeSolution {
            b,
            rho,
            lambda: -rho,
            mu: f64::INFINITY,
            z,
            p_star: ProbabilityVector::new(p)?,
            degenerate: true,
        });
    }
    // p_i proportional to z^i, scaled by the largest term to avoid overflow.
    let pivot = if z > 1.0 { b } else { 0 };
    let weights: Vec<f64> = (0..=b)
        .map(|i| libm::pow(z, i as f64 - pivot as f64))
        .collect();
    let total: f64 = weights.iter().sum();
    let p: Vec<f64> = weights.iter().map(|w| w / total).collect();
    let norm_residual = libm::fabs(p.iter().sum::<f64>() - 1.0);
    let target = 1.0 / rho - (b + 1) as f64;
    let moment: f64 = p.iter().enumerate().map(|(i, x)| i as f64 * x).sum();
    let residual = norm_residual.max(libm::fabs(moment - target));
    if residual > CONSTRAINT_TOLERANCE {
        return Err(EntropyError::ConstraintViolation { residual });
    }
    let ln_z = libm::log(z);
    Ok(LagrangeSolution {
        b,
        rho,
        lambda: -rho * (1.0 - ln_geometric_sum(z, b)),
        mu: -rho * ln_z,
        z,
        p_star: ProbabilityVector::new(p)?,
        degenerate: false,
    })
}
