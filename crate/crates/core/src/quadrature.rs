//! Adaptive Gauss–Kronrod quadrature (7-point Gauss, 15-point Kronrod).
//!
//! Global subdivision: the interval with the largest error estimate is
//! bisected until the summed estimate drops below the absolute tolerance.

use alloc::vec::Vec;
use core::fmt;

// Tabulated to 33 digits as published; rounding to f64 happens at compile time.

/// Kronrod abscissae on `[0, 1]`; odd indices are the Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for `XGK[1], XGK[3], XGK[5], XGK[7]`.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Evaluations per panel.
pub const GK15_EVALUATIONS: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

/// Tolerance not met within the evaluation budget; `partial` is the best
/// estimate reached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureError {
    pub partial: QuadratureResult,
    pub tolerance: f64,
}

impl fmt::Display for QuadratureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "quadrature did not reach tolerance {:e} after {} evaluations (estimate {} +- {:e})",
            self.tolerance,
            self.partial.evaluations,
            self.partial.value,
            self.partial.abs_error_estimate
        )
    }
}

impl core::error::Error for QuadratureError {}

/// One GK15 panel: `(kronrod, error estimate)`.
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = libm::fabs(kronrod);
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += w * (f1 + f2);
        resabs += w * (libm::fabs(f1) + libm::fabs(f2));
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let resabs = resabs * libm::fabs(half);
    let err = libm::fmax(
        libm::fabs((kronrod - gauss) * half),
        50.0 * f64::EPSILON * resabs,
    );
    (value, err)
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

/// `int_a^b f` to absolute tolerance `tol` using at most `max_evals`
/// integrand evaluations.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_evals: usize,
) -> Result<QuadratureResult, QuadratureError> {
    let (value, err) = gk15(&f, a, b);
    let mut panels = alloc::vec![Panel { a, b, value, err }];
    let mut evaluations = GK15_EVALUATIONS;
    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let total_err: f64 = panels.iter().map(|p| p.err).sum();
        let result = QuadratureResult {
            value: total,
            abs_error_estimate: total_err,
            evaluations,
        };
        if total_err <= tol {
            return Ok(result);
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let Panel { a, b, .. } = panels[worst];
        let mid = 0.5 * (a + b);
        if evaluations + 2 * GK15_EVALUATIONS > max_evals || mid <= a || mid >= b {
            return Err(QuadratureError {
                partial: result,
                tolerance: tol,
            });
        }
        let (v1, e1) = gk15(&f, a, mid);
        let (v2, e2) = gk15(&f, mid, b);
        evaluations += 2 * GK15_EVALUATIONS;
        panels[worst] = Panel {
            a,
            b: mid,
            value: v1,
            err: e1,
        };
        panels.push(Panel {
            a: mid,
            b,
            value: v2,
            err: e2,
        });
    }
}

/// Cached `E(y) = int_0^y g` on a uniform grid clipped at `upper`, with one
/// GK15 panel for the remainder past the last grid point below `y`.
pub struct CumulativeIntegral<G: Fn(f64) -> f64> {
    g: G,
    step: f64,
    upper: f64,
    /// `values[i] = int_0^{min(i * step, upper)} g`.
    values: Vec<f64>,
    /// Sum of the per-panel error estimates accumulated into `values`.
    pub abs_error_estimate: f64,
}

impl<G: Fn(f64) -> f64> CumulativeIntegral<G> {
    /// Tabulates `E` on `0, step, 2 step, ..., upper`; `g` is never
    /// evaluated past `upper`.
    pub fn new(g: G, step: f64, upper: f64) -> Self {
        let n = libm::ceil(upper / step) as usize;
        let mut values = Vec::with_capacity(n + 1);
        values.push(0.0);
        let mut acc = 0.0;
        let mut err = 0.0;
        for i in 0..n {
            let a = i as f64 * step;
            let b = libm::fmin((i + 1) as f64 * step, upper);
            let (v, e) = gk15(&g, a, b);
            acc += v;
            err += e;
            values.push(acc);
        }
        CumulativeIntegral {
            g,
            step,
            upper,
            values,
            abs_error_estimate: err,
        }
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// `E(y)` for `0 <= y <= upper()`.
    pub fn eval(&self, y: f64) -> f64 {
        let i = ((y / self.step) as usize).min(self.values.len() - 1);
        let x0 = libm::fmin(i as f64 * self.step, self.upper);
        if y <= x0 {
            return self.values[i];
        }
        self.values[i] + gk15(&self.g, x0, y).0
    }
}
