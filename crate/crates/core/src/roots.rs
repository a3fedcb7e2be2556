//! Positive real roots of low-degree real polynomials.
//!
//! Sign-change scan on a geometric grid between Cauchy-type bounds, bisection
//! of every bracket and one Newton polish. Degrees here are the blockade
//! range, so a dense scan is cheap and does not miss well-separated roots.

use alloc::vec::Vec;

use crate::numeric::{bisect, poly_derivative, poly_eval};

/// Relative bracket width at which bisection stops.
pub const ROOT_TOLERANCE: f64 = 1e-14;

/// Ratio between consecutive grid points of the scan.
const GRID_RATIO: f64 = 1.1;

const MAX_GRID_POINTS: usize = 50_000;

/// Bounds `(lower, upper)` enclosing the modulus of every nonzero root:
/// `|c_0| / (|c_0| + max_{i>0} |c_i|) <= |z| < 1 + max_{i<n} |c_i / c_n|`.
pub fn root_modulus_bounds(coeffs: &[f64]) -> (f64, f64) {
    let n = coeffs.len() - 1;
    let lead = libm::fabs(coeffs[n]);
    let upper = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| libm::fabs(*c) / lead)
            .fold(0.0, f64::max);
    let c0 = libm::fabs(coeffs[0]);
    let tail = coeffs[1..]
        .iter()
        .map(|c| libm::fabs(*c))
        .fold(0.0, f64::max);
    (c0 / (c0 + tail), upper)
}

/// All positive real roots of `sum coeffs[i] z^i`, ascending.
///
/// Roots of even multiplicity (no sign change) are only found if they land
/// exactly on a grid point; the polynomials this crate solves have simple
/// positive roots.
pub fn positive_real_roots(coeffs: &[f64]) -> Vec<f64> {
    let mut c: &[f64] = coeffs;
    while let Some((&last, rest)) = c.split_last() {
        if last != 0.0 {
            break;
        }
        c = rest;
    }
    // Roots at zero are not positive; divide them out.
    while c.len() > 1 && c[0] == 0.0 {
        c = &c[1..];
    }
    if c.len() < 2 {
        return Vec::new();
    }
    let (lower, upper) = root_modulus_bounds(c);
    let lo = 0.5 * lower;
    let hi = upper;
    let span = libm::log(hi / lo);
    let steps = (libm::ceil(span / libm::log(GRID_RATIO)) as usize).clamp(1, MAX_GRID_POINTS);
    let ratio = libm::exp(span / steps as f64);

    let p = |z: f64| poly_eval(c, z);
    let mut roots = Vec::new();
    let mut z_prev = lo;
    let mut p_prev = p(z_prev);
    if p_prev == 0.0 {
        roots.push(z_prev);
    }
    for j in 1..=steps {
        let z = if j == steps {
            hi
        } else {
            lo * libm::pow(ratio, j as f64)
        };
        let pz = p(z);
        if pz == 0.0 {
            roots.push(z);
        } else if p_prev != 0.0 && pz.signum() != p_prev.signum() {
            if let Some(r) = bisect(p, z_prev, z, ROOT_TOLERANCE) {
                roots.push(newton_polish(c, r, z_prev, z));
            }
        }
        z_prev = z;
        p_prev = pz;
    }
    roots
}

/// One Newton step, kept only if it stays in the bracket and does not
/// increase the residual.
fn newton_polish(coeffs: &[f64], z: f64, lo: f64, hi: f64) -> f64 {
    let pz = poly_eval(coeffs, z);
    let dz = poly_derivative(coeffs, z);
    if pz == 0.0 || dz == 0.0 || !dz.is_finite() {
        return z;
    }
    let candidate = z - pz / dz;
    if candidate >= lo
        && candidate <= hi
        && libm::fabs(poly_eval(coeffs, candidate)) <= libm::fabs(pz)
    {
        candidate
    } else {
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len()
            && a.iter()
                .zip(b)
                .all(|(x, y)| (x - y).abs() <= tol * y.abs().max(1.0))
    }

    #[test]
    fn linear_root() {
        // -0.5 + 0.5 z
        assert_eq!(positive_real_roots(&[-0.5, 0.5]), vec![1.0]);
    }

    #[test]
    fn separated_roots_of_a_cubic() {
        // (z - 0.5)(z - 2)(z - 7)
        let c = [-7.0, 18.5, -9.5, 1.0];
        assert!(close(&positive_real_roots(&c), &[0.5, 2.0, 7.0], 1e-13));
    }

    #[test]
    fn negative_and_complex_roots_ignored() {
        // (z + 1)(z^2 + 1)
        assert!(positive_real_roots(&[1.0, 1.0, 1.0, 1.0]).is_empty());
        // (z + 3)(z - 0.25)
        assert!(close(
            &positive_real_roots(&[-0.75, 2.75, 1.0]),
            &[0.25],
            1e-14
        ));
    }

    #[test]
    fn tiny_and_huge_roots() {
        assert!(close(&positive_real_roots(&[-1e-9, 1.0]), &[1e-9], 1e-13));
        assert!(close(&positive_real_roots(&[-1e9, 1.0]), &[1e9], 1e-13));
    }

    #[test]
    fn zero_root_divided_out() {
        // z (z - 3)
        assert!(close(
            &positive_real_roots(&[0.0, -3.0, 1.0]),
            &[3.0],
            1e-14
        ));
        assert!(positive_real_roots(&[2.0]).is_empty());
    }
}
