//! Small numeric helpers shared across modules.

use num_bigint::BigUint;

/// Bisection for a sign change of `f` on `[lo, hi]`.
///
/// Stops when the bracket is narrower than `tol * max(1, |mid|)` or when the
/// midpoint no longer moves in floating point. Returns `None` if `f(lo)` and
/// `f(hi)` have the same strict sign.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Some(lo);
    }
    if f_hi == 0.0 {
        return Some(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return None;
    }
    for _ in 0..2200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= tol * libm::fmax(1.0, libm::fabs(mid)) {
            return Some(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Some(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Horner evaluation of `sum c_i z^i` (coefficients in ascending order).
#[inline]
pub fn poly_eval(coeffs: &[f64], z: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * z + c)
}

/// Derivative of [`poly_eval`] at `z`.
#[inline]
pub fn poly_derivative(coeffs: &[f64], z: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (i, &c)| acc * z + i as f64 * c)
}

/// `ln(1 + z + ... + z^n)` for `z > 0`, without overflow for large `z`.
pub fn ln_geometric_sum(z: f64, n: usize) -> f64 {
    if z <= 1.0 {
        libm::log(geometric_sum(z, n))
    } else {
        n as f64 * libm::log(z) + libm::log(geometric_sum(1.0 / z, n))
    }
}

/// `1 + z + ... + z^n` by Horner, regular at `z = 1`.
#[inline]
pub fn geometric_sum(z: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, _| acc * z + 1.0)
}

/// Natural logarithm of an arbitrary-precision integer. `ln 0` is `-inf`.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    // Keep the top 64 bits; the discarded part only affects the ~1e-19
    // relative error of the mantissa.
    let shift = bits.saturating_sub(64);
    let top = x >> shift;
    let digits = top.to_u64_digits();
    let mantissa = digits.first().copied().unwrap_or(0) as f64;
    libm::log(mantissa) + shift as f64 * core::f64::consts::LN_2
}

/// Arithmetic mean and standard error (sample standard deviation over
/// `sqrt(n)`). A single sample has standard error zero.
pub fn mean_and_std_error(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, libm::sqrt(var / n as f64))
}
