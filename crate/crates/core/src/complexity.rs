//! The complexity function `f(rho)` of jammed configurations.
//!
//! For `1/(2b+1) < rho < 1/(b+1)`,
//!
//! ```text
//! f(rho) = rho * ln(1 + z + ... + z^b) - (1 - (b+1) rho) * ln z
//! ```
//!
//! where `z > 0` is a root of `p(z) = sum_{i=0}^{b} (i + b + 1 - 1/rho) z^i`.
//! Outside that interval `f = 0`. At `rho = 1/(b+1)`, `z = 0` and `f = 0`.
//!
//! The sum `1 + ... + z^b` replaces the ratio `(1 - z^{b+1}) / (1 - z)`, so
//! `z = 1` (hit exactly at `rho = 2/(3b+2)`) needs no special case.

use alloc::vec::Vec;
use core::fmt;

use crate::model::ModelParams;
use crate::numeric::{bisect, geometric_sum, ln_geometric_sum};
use crate::quadrature::QuadratureError;
use crate::roots::{positive_real_roots, ROOT_TOLERANCE};
use crate::rsa::jamming_limit_quadrature;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComplexityError {
    /// Density is NaN or outside `[0, 1]`.
    InvalidDensity(f64),
    InvalidKmerSize(usize),
    /// `p(z)` has no positive root although `c_0 < 0 < c_b`. Indicates a
    /// root-isolation bug.
    NoPositiveRoot {
        b: usize,
        rho: f64,
    },
    /// An explicit formula was called outside the open interval it covers.
    Domain {
        rho: f64,
        lo: f64,
        hi: f64,
    },
    Quadrature(QuadratureError),
}

impl fmt::Display for ComplexityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexityError::InvalidDensity(rho) => write!(f, "density {rho} is not in [0, 1]"),
            ComplexityError::InvalidKmerSize(k) => write!(f, "k-mer size must be >= 2, got {k}"),
            ComplexityError::NoPositiveRoot { b, rho } => write!(
                f,
                "internal error: no positive root of the complexity polynomial for b = {b}, rho = {rho}"
            ),
            ComplexityError::Domain { rho, lo, hi } => {
                write!(f, "density {rho} outside the formula's range ({lo}, {hi}]")
            }
            ComplexityError::Quadrature(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ComplexityError {}

impl From<QuadratureError> for ComplexityError {
    fn from(e: QuadratureError) -> Self {
        ComplexityError::Quadrature(e)
    }
}

fn check_density(rho: f64) -> Result<(), ComplexityError> {
    if (0.0..=1.0).contains(&rho) {
        Ok(())
    } else {
        Err(ComplexityError::InvalidDensity(rho))
    }
}

/// Coefficients `c_i = i + b + 1 - 1/rho`, ascending; increasing in `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSpec {
    pub b: usize,
    pub rho: f64,
    pub coefficients: Vec<f64>,
}

impl PolynomialSpec {
    pub fn new(params: ModelParams, rho: f64) -> Self {
        let b = params.b();
        let inv = 1.0 / rho;
        PolynomialSpec {
            b,
            rho,
            coefficients: (0..=b).map(|i| (i + b + 1) as f64 - inv).collect(),
        }
    }

    pub fn positive_roots(&self) -> Vec<f64> {
        positive_real_roots(&self.coefficients)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityPoint {
    pub rho: f64,
    /// Selected root; `None` where `f` vanishes without a root (outside the
    /// support or at its lower end).
    pub z: Option<f64>,
    /// Nats per site.
    pub f: f64,
    pub root_candidates: Vec<f64>,
}

/// `f` at a root `z > 0`.
fn f_at_root(b: usize, rho: f64, z: f64) -> f64 {
    rho * ln_geometric_sum(z, b) - (1.0 - (b + 1) as f64 * rho) * libm::log(z)
}

pub fn complexity(params: ModelParams, rho: f64) -> Result<ComplexityPoint, ComplexityError> {
    check_density(rho)?;
    let b = params.b();
    let zero = |z| ComplexityPoint {
        rho,
        z,
        f: 0.0,
        root_candidates: Vec::new(),
    };
    if rho == 0.0 {
        return Ok(zero(None));
    }
    let spec = PolynomialSpec::new(params, rho);
    let c0 = spec.coefficients[0];
    let cb = spec.coefficients[b];
    // c_0 >= 0: rho >= 1/(b+1). c_b <= 0: rho <= 1/(2b+1).
    if c0 > 0.0 || cb <= 0.0 {
        return Ok(zero(None));
    }
    if c0 == 0.0 {
        return Ok(zero(Some(0.0)));
    }
    let roots = spec.positive_roots();
    if roots.len() > 1 {
        log::warn!(
            "complexity polynomial for b = {b}, rho = {rho} has {} positive roots",
            roots.len()
        );
    }
    let best = roots
        .iter()
        .map(|&z| (z, f_at_root(b, rho, z)))
        .max_by(|x, y| x.1.total_cmp(&y.1));
    match best {
        Some((z, f)) => Ok(ComplexityPoint {
            rho,
            z: Some(z),
            f,
            root_candidates: roots,
        }),
        None => {
            log::error!("no positive root for b = {b}, rho = {rho}");
            Err(ComplexityError::NoPositiveRoot { b, rho })
        }
    }
}

/// `x ln x` with `0 ln 0 = 0`.
fn xlnx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * libm::log(x)
    }
}

/// Explicit `b = 1` form on `(1/3, 1/2]`:
/// `rho ln rho - (1 - 2 rho) ln(1 - 2 rho) - (3 rho - 1) ln(3 rho - 1)`.
pub fn complexity_closed_b1(rho: f64) -> Result<f64, ComplexityError> {
    if !(rho > 1.0 / 3.0 && rho <= 0.5) {
        return Err(ComplexityError::Domain {
            rho,
            lo: 1.0 / 3.0,
            hi: 0.5,
        });
    }
    Ok(xlnx(rho) - xlnx(1.0 - 2.0 * rho) - xlnx(3.0 * rho - 1.0))
}

/// Explicit `b = 2` form on `(1/5, 1/3]`.
///
/// With `s = sqrt(-44 rho^2 + 24 rho - 3)`, the root is
/// `z = 2 (1 - 3 rho) / (s + 4 rho - 1)` and `1 + z + z^2 = 1/R` with
/// `R = 2 (5 rho - 1)^2 / (rho (16 rho - 3 + s))`, so
/// `f = (3 rho - 1) ln z - rho ln R`. Both pieces are cancellation free on the
/// whole interval; `z = 1` at `rho = 1/4` and `(3 rho - 1) ln z -> 0` at
/// `rho = 1/3`.
pub fn complexity_closed_b2(rho: f64) -> Result<f64, ComplexityError> {
    if !(rho > 0.2 && rho <= 1.0 / 3.0) {
        return Err(ComplexityError::Domain {
            rho,
            lo: 0.2,
            hi: 1.0 / 3.0,
        });
    }
    let s = libm::sqrt(-44.0 * rho * rho + 24.0 * rho - 3.0);
    let first = if 3.0 * rho - 1.0 >= 0.0 {
        0.0
    } else {
        let z = 2.0 * (1.0 - 3.0 * rho) / (s + 4.0 * rho - 1.0);
        (3.0 * rho - 1.0) * libm::log(z)
    };
    let d = 5.0 * rho - 1.0;
    let r = 2.0 * d * d / (rho * (16.0 * rho - 3.0 + s));
    Ok(first - rho * libm::log(r))
}

/// Density maximising `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumDensity {
    pub b: usize,
    /// Root in `(0, 1)` of `z^{2b+1} + ... + z^{b+1} - 1`.
    pub z_star: f64,
    pub rho_star: f64,
    pub f_at_star: f64,
}

pub fn rho_star(params: ModelParams) -> EquilibriumDensity {
    let b = params.b();
    let bf = b as f64;
    let q = |z: f64| libm::pow(z, (b + 1) as f64) * geometric_sum(z, b) - 1.0;
    let z = bisect(q, 0.0, 1.0, ROOT_TOLERANCE).expect("q(0) = -1 < 0 < q(1) = b");
    let zb1 = libm::pow(z, (b + 1) as f64);
    let zb2 = zb1 * z;
    let rho = (1.0 - z) * (1.0 - zb1)
        / (1.0 + bf - bf * z - 2.0 * zb1 - 2.0 * bf * zb1 + zb2 + 2.0 * bf * zb2);
    let f_at_star = complexity(params, rho).expect("rho_star lies in (0, 1)").f;
    EquilibriumDensity {
        b,
        z_star: z,
        rho_star: rho,
        f_at_star,
    }
}

fn kmer_params(k: usize) -> Result<ModelParams, ComplexityError> {
    ModelParams::from_kmer(k).map_err(|_| ComplexityError::InvalidKmerSize(k))
}

/// Coverage complexity of k-mer deposition, `f(b = k - 1, rho / k)`.
pub fn kmer_complexity(k: usize, rho: f64) -> Result<f64, ComplexityError> {
    let params = kmer_params(k)?;
    check_density(rho)?;
    Ok(complexity(params, rho / k as f64)?.f)
}

/// The k-mer formula written directly in coverage:
/// `(rho/k) [ln(1 + ... + z^{k-1}) - (k/rho - k) ln z]` with `z` a root of
/// `sum_{i<k} (i + k - k/rho) z^i`, on `k/(2k-1) < rho <= 1`.
pub fn kmer_complexity_direct(k: usize, rho: f64) -> Result<f64, ComplexityError> {
    kmer_params(k)?;
    check_density(rho)?;
    let kf = k as f64;
    let coeffs: Vec<f64> = (0..k).map(|i| i as f64 + kf - kf / rho).collect();
    if coeffs[0] >= 0.0 || coeffs[k - 1] <= 0.0 {
        return Ok(0.0);
    }
    positive_real_roots(&coeffs)
        .into_iter()
        .map(|z| rho / kf * (ln_geometric_sum(z, k - 1) - (kf / rho - kf) * libm::log(z)))
        .max_by(f64::total_cmp)
        .ok_or(ComplexityError::NoPositiveRoot { b: k - 1, rho })
}

/// `k * rho_star(b = k - 1)`.
pub fn kmer_rho_star(k: usize) -> Result<f64, ComplexityError> {
    let params = kmer_params(k)?;
    Ok(k as f64 * rho_star(params).rho_star)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledLimits {
    pub b: usize,
    pub rho_star: f64,
    pub rho_inf: f64,
    pub b_rho_star: f64,
    pub b_rho_inf: f64,
}

/// `b * rho_star` and `b * rho_inf` for `b = 1..=b_max`.
pub fn b_scaled_limits(b_max: usize, tol: f64) -> Result<Vec<ScaledLimits>, ComplexityError> {
    (1..=b_max)
        .map(|b| {
            let params = ModelParams::new(b).expect("b >= 1");
            let rho_star = rho_star(params).rho_star;
            let rho_inf = jamming_limit_quadrature(params, tol)?.value;
            Ok(ScaledLimits {
                b,
                rho_star,
                rho_inf,
                b_rho_star: b as f64 * rho_star,
                b_rho_inf: b as f64 * rho_inf,
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

    const LN2: f64 = core::f64::consts::LN_2;

    /// The two-line `b = 2` expression as printed, used only where it is
    /// well conditioned (away from `rho = 1/5` and the 0/0 at `rho = 1/4`).
    fn literal_b2(rho: f64) -> f64 {
        let s = libm::sqrt(-44.0 * rho * rho + 24.0 * rho - 3.0);
        let a = (s - 4.0 * rho + 1.0) / (10.0 * rho - 2.0);
        let num = -350.0 * rho * rho * rho
            + (25.0 * rho * rho - 10.0 * rho + 1.0) * s
            + 215.0 * rho * rho
            - 44.0 * rho
            + 3.0;
        let den = rho * rho * s - 134.0 * rho * rho * rho + 57.0 * rho * rho - 6.0 * rho;
        (3.0 * rho - 1.0) * libm::log(a) - rho * libm::log(num / den)
    }

    #[test]
    fn b1_at_two_fifths_has_unit_root() {
        let c = complexity(p(1), 0.4).unwrap();
        assert!((c.z.unwrap() - 1.0).abs() < 1e-15);
        assert!((c.f - 0.4 * LN2).abs() < 1e-15);
    }

    #[test]
    fn support_edges() {
        for b in 1..=6 {
            let hi = 1.0 / (b + 1) as f64;
            let top = complexity(p(b), hi).unwrap();
            assert_eq!(top.f, 0.0);
            assert_eq!(top.z, Some(0.0));
            assert_eq!(complexity(p(b), 1.0 / (2 * b + 1) as f64).unwrap().f, 0.0);
            assert_eq!(complexity(p(b), 0.0).unwrap().f, 0.0);
            assert_eq!(complexity(p(b), 0.99).unwrap().f, 0.0);
        }
        assert!(complexity(p(1), 1.5).is_err());
        assert!(complexity(p(1), f64::NAN).is_err());
    }

    #[test]
    fn unit_root_density_is_regular() {
        for b in 1..=10 {
            let rho = 2.0 / (3 * b + 2) as f64;
            let c = complexity(p(b), rho).unwrap();
            assert!(c.f.is_finite() && c.f > 0.0);
            assert!((c.z.unwrap() - 1.0).abs() < 1e-9, "b={b}");
            let expected = rho * libm::log((b + 1) as f64);
            assert!((c.f - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_b1_values() {
        assert!((complexity_closed_b1(0.4).unwrap() - 0.4 * LN2).abs() < 1e-15);
        // f ~ 2 eps ln(1/eps) below rho = 1/2: 1.76e-3 at eps = 1e-4.
        assert!((complexity_closed_b1(0.4999).unwrap() - 0.001_764_729_184_832_59).abs() < 1e-13);
        assert!(complexity_closed_b1(0.49999).unwrap() < 1e-3);
        assert_eq!(complexity_closed_b1(0.5).unwrap(), 0.0);
        let rho = 1.0 / 3.0 + 1e-6;
        let general = complexity(p(1), rho).unwrap().f;
        assert!((complexity_closed_b1(rho).unwrap() - general).abs() < 1e-8);
        assert!(complexity_closed_b1(0.3).is_err());
        assert!(complexity_closed_b1(0.51).is_err());
    }

    #[test]
    fn closed_b2_values() {
        let v = complexity_closed_b2(0.21).unwrap();
        assert!((v - 0.125_580_164_583_237_79).abs() < 1e-14);
        assert!((v - complexity(p(2), 0.21).unwrap().f).abs() < 1e-10);
        assert!(
            (complexity_closed_b2(0.25).unwrap() - complexity(p(2), 0.25).unwrap().f).abs() < 1e-10
        );
        assert!(complexity_closed_b2(1.0 / 3.0).unwrap().abs() < 1e-15);
        assert!(complexity_closed_b2(0.2).is_err());
        assert!(complexity_closed_b2(0.34).is_err());
    }

    #[test]
    fn closed_b2_discriminant_positive() {
        let disc = |r: f64| -44.0 * r * r + 24.0 * r - 3.0;
        assert!(disc(0.2) > 0.0 && disc(1.0 / 3.0) > 0.0 && disc(24.0 / 88.0) > 0.0);
    }

    #[test]
    fn stable_b2_matches_literal_form() {
        for i in 1..200 {
            let rho = 0.21 + 0.12 * i as f64 / 200.0;
            if (rho - 0.25).abs() < 1e-3 {
                continue;
            }
            let stable = complexity_closed_b2(rho).unwrap();
            assert!((stable - literal_b2(rho)).abs() < 1e-11, "rho={rho}");
        }
    }

    #[test]
    fn rho_star_b1() {
        let e = rho_star(p(1));
        assert!((e.z_star - 0.754_877_666_246_693).abs() < 1e-14);
        assert!((e.rho_star - 0.411_495_588_662_646).abs() < 1e-13);
        assert!((e.f_at_star - 0.281_199_574_322_962).abs() < 1e-12);
        // Stationarity of the b = 1 closed form.
        let r = e.rho_star;
        assert!(
            (r * (1.0 - 2.0 * r) * (1.0 - 2.0 * r) - libm::pow(3.0 * r - 1.0, 3.0)).abs() < 1e-14
        );
    }

    #[test]
    fn rho_star_inside_support() {
        for b in 1..=60 {
            let e = rho_star(p(b));
            assert!(e.rho_star > 1.0 / (2 * b + 1) as f64);
            assert!(e.rho_star < 1.0 / (b + 1) as f64);
        }
        assert!((rho_star(p(2)).rho_star - 0.262_125_765_928_093).abs() < 1e-13);
        assert!((rho_star(p(3)).rho_star - 0.192_994_652_141_274).abs() < 1e-13);
    }

    #[test]
    fn kmer_values() {
        assert!((kmer_complexity(2, 0.8).unwrap() - 0.4 * LN2).abs() < 1e-15);
        assert_eq!(kmer_complexity(2, 1.0).unwrap(), 0.0);
        assert_eq!(kmer_complexity(3, 0.6).unwrap(), 0.0);
        assert_eq!(kmer_complexity(3, 0.55).unwrap(), 0.0);
        assert!(kmer_complexity(1, 0.5).is_err());
        assert!((kmer_rho_star(2).unwrap() - 0.822_991_177_325_292).abs() < 1e-12);
    }

    #[test]
    fn kmer_direct_formula_agrees() {
        for k in 2..=12 {
            for i in 0..=100 {
                let rho = i as f64 / 100.0;
                let a = kmer_complexity(k, rho).unwrap();
                let d = kmer_complexity_direct(k, rho).unwrap();
                assert!((a - d).abs() < 1e-12, "k={k} rho={rho}: {a} vs {d}");
            }
        }
    }

    #[test]
    fn scaled_limits_b1() {
        let t = b_scaled_limits(1, 1e-12).unwrap();
        assert!((t[0].b_rho_inf - 0.432_332_358_381_694).abs() < 1e-12);
        assert!((t[0].b_rho_star - 0.411_495_588_662_646).abs() < 1e-12);
    }
}
