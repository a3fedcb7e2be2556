//! Jamming densities of the infinite row by quadrature.
//!
//! ```text
//! rho_inf(b)       = int_0^1 exp[-2 sum_{j=1}^{b} (1 - y^j)/j] dy
//! rho_inf^kmer(k)  = k int_0^inf exp[-u - 2 sum_{j=1}^{k-1} (1 - e^{-ju})/j] du
//! b rho_inf(b)     = int_0^b exp[-2 int_0^t (1 - (1 - x/b)^b)/x dx] dt
//! Renyi constant   = int_0^inf exp[-2 int_0^y (1 - e^{-x})/x dx] dy
//! ```
//!
//! The k-mer and scaled forms are independent quadratures of the same
//! numbers and serve as cross-checks.

use alloc::vec::Vec;
use core::fmt;

use crate::model::ModelParams;
use crate::quadrature::{integrate, CumulativeIntegral, QuadratureError, QuadratureResult};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Integrand evaluations allowed per outer quadrature.
pub const MAX_EVALUATIONS: usize = 2_000_000;

/// Agreement required between two quadrature routes of the same quantity.
pub const ROUTE_TOLERANCE: f64 = 1e-9;

/// Agreement required between the scaled and direct forms of `b rho_inf`.
pub const SCALED_ROUTE_TOLERANCE: f64 = 1e-8;

/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Grid step of the cached inner integrals.
const INNER_STEP: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitError {
    InvalidKmerSize(usize),
    Quadrature(QuadratureError),
    /// Two routes to the same value disagree beyond tolerance.
    RouteMismatch {
        first: f64,
        second: f64,
    },
}

impl fmt::Display for LimitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitError::InvalidKmerSize(k) => write!(f, "k-mer size must be >= 2, got {k}"),
            LimitError::Quadrature(e) => write!(f, "{e}"),
            LimitError::RouteMismatch { first, second } => write!(
                f,
                "quadrature routes disagree: {first} vs {second} (difference {:e})",
                libm::fabs(first - second)
            ),
        }
    }
}

impl core::error::Error for LimitError {}

impl From<QuadratureError> for LimitError {
    fn from(e: QuadratureError) -> Self {
        LimitError::Quadrature(e)
    }
}

fn jamming_integrand(b: usize, y: f64) -> f64 {
    let mut power = 1.0;
    let mut sum = 0.0;
    for j in 1..=b {
        power *= y;
        sum += (1.0 - power) / j as f64;
    }
    libm::exp(-2.0 * sum)
}

/// `rho_inf(b)` to absolute tolerance `tol`.
pub fn jamming_limit_quadrature(
    params: ModelParams,
    tol: f64,
) -> Result<QuadratureResult, QuadratureError> {
    let b = params.b();
    integrate(|y| jamming_integrand(b, y), 0.0, 1.0, tol, MAX_EVALUATIONS)
}

/// The k-mer integral in its exponential form, truncated where the
/// neglected tail is below `tol / 10`.
pub fn kmer_jamming_limit_direct(k: usize, tol: f64) -> Result<QuadratureResult, LimitError> {
    if k < 2 {
        return Err(LimitError::InvalidKmerSize(k));
    }
    let kf = k as f64;
    // The integrand is below e^{-u}, so the tail past `upper` is below
    // k e^{-upper} = tol / 10.
    let upper = libm::log(10.0 * kf / tol);
    let integrand = |u: f64| {
        let sum: f64 = (1..k)
            .map(|j| -libm::expm1(-(j as f64) * u) / j as f64)
            .sum();
        kf * libm::exp(-u - 2.0 * sum)
    };
    let mut r = integrate(integrand, 0.0, upper, 0.9 * tol, MAX_EVALUATIONS)?;
    r.abs_error_estimate += 0.1 * tol;
    Ok(r)
}

/// `k * rho_inf(b = k - 1)`, checked against [`kmer_jamming_limit_direct`].
pub fn kmer_jamming_limit(k: usize, tol: f64) -> Result<QuadratureResult, LimitError> {
    let params = ModelParams::from_kmer(k).map_err(|_| LimitError::InvalidKmerSize(k))?;
    let kf = k as f64;
    let base = jamming_limit_quadrature(params, tol / kf)?;
    let direct = kmer_jamming_limit_direct(k, tol)?;
    let scaled = QuadratureResult {
        value: kf * base.value,
        abs_error_estimate: kf * base.abs_error_estimate,
        evaluations: base.evaluations,
    };
    if libm::fabs(scaled.value - direct.value) > ROUTE_TOLERANCE.max(2.0 * tol) {
        return Err(LimitError::RouteMismatch {
            first: scaled.value,
            second: direct.value,
        });
    }
    Ok(scaled)
}

/// `(1 - e^{-x}) / x`, equal to 1 at `x = 0`.
fn renyi_inner(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        -libm::expm1(-x) / x
    }
}

/// `int_0^upper exp[-2 E(y)] dy` with `E(y) = int_0^y (1 - e^{-x})/x dx`.
pub fn renyi_truncated(upper: f64, tol: f64) -> Result<QuadratureResult, QuadratureError> {
    let inner = CumulativeIntegral::new(renyi_inner, INNER_STEP, upper);
    let r = integrate(
        |y| libm::exp(-2.0 * inner.eval(y)),
        0.0,
        upper,
        tol,
        MAX_EVALUATIONS,
    )?;
    Ok(QuadratureResult {
        abs_error_estimate: r.abs_error_estimate + 2.0 * upper * inner.abs_error_estimate,
        ..r
    })
}

/// Rényi's parking constant.
///
/// For large `y`, `E(y) = ln y + gamma + E_1(y)` with `E_1(y) < e^{-y}/y`,
/// so the integrand is `e^{-2 gamma} / y^2` up to a relative `2 E_1(y)`.
/// The outer integral is computed to `Y` and the tail added as
/// `e^{-2 gamma} / Y`; `Y` doubles until the integrand matches that model
/// to within `tol` (scaled by `Y`, the length over which the model error
/// accumulates).
pub fn renyi_constant(tol: f64) -> Result<QuadratureResult, QuadratureError> {
    let tail_coeff = libm::exp(-2.0 * EULER_GAMMA);
    let mut upper = 8.0;
    loop {
        let inner = CumulativeIntegral::new(renyi_inner, INNER_STEP, upper);
        let at_upper = libm::exp(-2.0 * inner.eval(upper));
        let model_residual = libm::fabs(at_upper - tail_coeff / (upper * upper)) * upper;
        if model_residual < 0.1 * tol || upper >= 1024.0 {
            let body = renyi_truncated(upper, 0.5 * tol)?;
            return Ok(QuadratureResult {
                value: body.value + tail_coeff / upper,
                abs_error_estimate: body.abs_error_estimate + model_residual,
                evaluations: body.evaluations,
            });
        }
        upper *= 2.0;
    }
}

/// `(1 - (1 - x/b)^b) / x`, equal to 1 at `x = 0`.
fn scaled_inner(b: f64, x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        -libm::expm1(b * libm::log1p(-x / b)) / x
    }
}

/// `b rho_inf(b)` through the substitution `y = 1 - t/b`, with the inner
/// integral evaluated numerically.
pub fn scaled_jamming_limit(
    params: ModelParams,
    tol: f64,
) -> Result<QuadratureResult, QuadratureError> {
    let bf = params.b() as f64;
    let inner = CumulativeIntegral::new(|x| scaled_inner(bf, x), INNER_STEP, bf);
    let r = integrate(
        |t| libm::exp(-2.0 * inner.eval(t)),
        0.0,
        bf,
        tol,
        MAX_EVALUATIONS,
    )?;
    Ok(QuadratureResult {
        abs_error_estimate: r.abs_error_estimate + 2.0 * bf * inner.abs_error_estimate,
        ..r
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledLimitRow {
    pub b: usize,
    /// From the substituted integral.
    pub b_rho_inf: f64,
    /// `b` times the direct integral.
    pub b_times_direct: f64,
}

/// `b rho_inf(b)` for `b = 1..=b_max`, each cross-checked to
/// [`SCALED_ROUTE_TOLERANCE`].
pub fn scaled_limit_table(b_max: usize, tol: f64) -> Result<Vec<ScaledLimitRow>, LimitError> {
    (1..=b_max)
        .map(|b| {
            let params = ModelParams::new(b).expect("b >= 1");
            let scaled = scaled_jamming_limit(params, tol)?.value;
            let direct = b as f64 * jamming_limit_quadrature(params, tol / b as f64)?.value;
            if libm::fabs(scaled - direct) > SCALED_ROUTE_TOLERANCE {
                return Err(LimitError::RouteMismatch {
                    first: scaled,
                    second: direct,
                });
            }
            Ok(ScaledLimitRow {
                b,
                b_rho_inf: scaled,
                b_times_direct: direct,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(b: usize) -> ModelParams {
        ModelParams::new(b).unwrap()
    }

    #[test]
    fn b1_is_analytic() {
        let r = jamming_limit_quadrature(p(1), 1e-12).unwrap();
        let exact = (1.0 - libm::exp(-2.0)) / 2.0;
        assert!((r.value - exact).abs() < 1e-13);
        assert!(r.abs_error_estimate <= 1e-12);
    }

    #[test]
    fn reference_values() {
        assert!(
            (jamming_limit_quadrature(p(2), 1e-12).unwrap().value - 0.274_550_987_725_779).abs()
                < 1e-12
        );
        assert!(
            (jamming_limit_quadrature(p(5), 1e-12).unwrap().value - 0.130_771_692_644_172).abs()
                < 1e-12
        );
    }

    #[test]
    fn inside_density_bounds() {
        for b in 1..=50 {
            let v = jamming_limit_quadrature(p(b), DEFAULT_TOLERANCE)
                .unwrap()
                .value;
            assert!(v > 1.0 / (2 * b + 1) as f64 && v < 1.0 / (b + 1) as f64);
        }
    }

    #[test]
    fn kmer_routes_agree() {
        let r = kmer_jamming_limit(2, DEFAULT_TOLERANCE).unwrap();
        assert!((r.value - (1.0 - libm::exp(-2.0))).abs() < 1e-10);
        assert!(kmer_jamming_limit(1, 1e-10).is_err());
    }

    #[test]
    fn inner_integrands_regular_at_zero() {
        assert_eq!(renyi_inner(0.0), 1.0);
        assert!((renyi_inner(1e-12) - 1.0).abs() < 1e-12);
        assert_eq!(scaled_inner(7.0, 0.0), 1.0);
        assert!((scaled_inner(1.0, 0.5) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn renyi_value() {
        let r = renyi_constant(1e-10).unwrap();
        assert!(
            (r.value - 0.747_597_920_253_411_4).abs() < 1e-9,
            "{}",
            r.value
        );
    }

    #[test]
    fn renyi_truncation_monotone() {
        let mut prev = 0.0;
        for upper in [1.0, 2.0, 5.0, 10.0, 20.0, 40.0] {
            let v = renyi_truncated(upper, 1e-12).unwrap().value;
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn scaled_table_small() {
        let t = scaled_limit_table(5, 1e-11).unwrap();
        assert!((t[0].b_rho_inf - 0.432_332_358_381_694).abs() < 1e-10);
        assert!((t[4].b_rho_inf - 0.653_858_463_220_86).abs() < 1e-8);
    }
}
