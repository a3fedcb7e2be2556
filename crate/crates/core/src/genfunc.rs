//! Exact counts from the bivariate generating functions.
//!
//! With `x` marking excited sites and `y` marking length, jammed Rydberg
//! configurations are generated by
//!
//! ```text
//! F_b(x, y) = 1 + s_b(x, y) e_b(x, y) / (1 - p_b(x, y))
//! s_b = 1 + y + ... + y^b                 (leading neutral run)
//! p_b = x y^{b+1} + ... + x y^{2b+1}      (excited site + b..2b neutral)
//! e_b = x y + ... + x y^{b+1}             (last excited site + 0..b neutral)
//! ```
//!
//! and k-mer deposition by `F_k = (1 - y^k) / (1 - y - x^k y^k + x^k y^{2k})`,
//! where `x` now marks occupied sites.
//!
//! Coefficients are extracted by truncated series arithmetic over `BigUint`.
//! Every denominator has constant term 1, so truncation at `L_max` never
//! feeds back into lower degrees. An independent route expands the closed
//! rational form through its linear recurrence over `BigInt`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Pow, Zero};

use crate::model::ModelParams;
use crate::numeric::{bisect, geometric_sum, ln_biguint};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenFuncError {
    /// k-mer size must be at least 2.
    InvalidKmerSize(usize),
    /// The recurrence route produced a negative coefficient.
    NegativeCoefficient { n: usize, l: usize },
}

impl fmt::Display for GenFuncError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenFuncError::InvalidKmerSize(k) => write!(f, "k-mer size must be >= 2, got {k}"),
            GenFuncError::NegativeCoefficient { n, l } => {
                write!(f, "negative coefficient at N = {n}, L = {l}")
            }
        }
    }
}

impl core::error::Error for GenFuncError {}

/// One term `coeff * x^x_deg * y^y_deg`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monomial {
    pub x_deg: usize,
    pub y_deg: usize,
    pub coeff: u64,
}

const fn mono(x_deg: usize, y_deg: usize) -> Monomial {
    Monomial {
        x_deg,
        y_deg,
        coeff: 1,
    }
}

/// Start, repeating-block and end polynomials of a transfer decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockEncoding {
    pub start: Vec<Monomial>,
    pub block: Vec<Monomial>,
    pub end: Vec<Monomial>,
}

impl BlockEncoding {
    /// `s_b`, `p_b`, `e_b` of the Rydberg model; each has `b + 1` terms.
    pub fn rydberg(params: ModelParams) -> Self {
        let b = params.b();
        BlockEncoding {
            start: (0..=b).map(|j| mono(0, j)).collect(),
            block: (b + 1..=2 * b + 1).map(|j| mono(1, j)).collect(),
            end: (1..=b + 1).map(|j| mono(1, j)).collect(),
        }
    }

    /// k-mer encoding: `s_k = 1 + ... + y^{k-1}`, `p_k = x^k y^k + ... +
    /// x^k y^{2k-1}` and `e_k = 1`.
    pub fn kmer(k: usize) -> Result<Self, GenFuncError> {
        if k < 2 {
            return Err(GenFuncError::InvalidKmerSize(k));
        }
        Ok(BlockEncoding {
            start: (0..k).map(|j| mono(0, j)).collect(),
            block: (k..2 * k).map(|j| mono(k, j)).collect(),
            end: vec![mono(0, 0)],
        })
    }
}

/// Dense truncated bivariate series: `rows[L][N]`, with `N <= L`.
type Dense = Vec<Vec<BigUint>>;

fn dense_zero(l_max: usize) -> Dense {
    (0..=l_max).map(|l| vec![BigUint::zero(); l + 1]).collect()
}

/// `1 / (1 - block)` truncated at `y^{l_max}`, via `G = 1 + block * G`.
fn geometric_inverse(block: &[Monomial], l_max: usize) -> Dense {
    let mut g = dense_zero(l_max);
    g[0][0] = BigUint::one();
    for l in 1..=l_max {
        for m in block {
            debug_assert!(m.y_deg >= 1);
            if m.y_deg > l {
                continue;
            }
            let (lower, upper) = g.split_at_mut(l);
            let src = &lower[l - m.y_deg];
            let dst = &mut upper[0];
            for (n, v) in src.iter().enumerate() {
                if !v.is_zero() && n + m.x_deg <= l {
                    dst[n + m.x_deg] += v * m.coeff;
                }
            }
        }
    }
    g
}

fn multiply(poly: &[Monomial], series: &Dense, l_max: usize) -> Dense {
    let mut out = dense_zero(l_max);
    for m in poly {
        for l in m.y_deg..=l_max {
            for (n, v) in series[l - m.y_deg].iter().enumerate() {
                if !v.is_zero() && n + m.x_deg <= l {
                    out[l][n + m.x_deg] += v * m.coeff;
                }
            }
        }
    }
    out
}

fn poly_product(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for p in a {
        for q in b {
            let (x_deg, y_deg) = (p.x_deg + q.x_deg, p.y_deg + q.y_deg);
            match out
                .iter_mut()
                .find(|m| m.x_deg == x_deg && m.y_deg == y_deg)
            {
                Some(m) => m.coeff += p.coeff * q.coeff,
                None => out.push(Monomial {
                    x_deg,
                    y_deg,
                    coeff: p.coeff * q.coeff,
                }),
            }
        }
    }
    out
}

/// Which generating function a table was expanded from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableModel {
    Rydberg(ModelParams),
    /// `N` counts occupied sites, always a multiple of `k`.
    Kmer {
        k: usize,
    },
}

/// Counts of one length `L`, stored from `n_min` upward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffRow {
    pub n_min: usize,
    pub counts: Vec<BigUint>,
}

/// Exact counts `J_{N,L}` for `0 <= L <= L_max`.
///
/// Rydberg rows cover exactly `ceil(L/(2b+1)) <= N <= ceil(L/(b+1))`; k-mer
/// rows cover the span of nonzero coefficients. Missing keys are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    model: TableModel,
    rows: Vec<CoeffRow>,
}

impl CoeffTable {
    fn from_dense(model: TableModel, dense: Dense) -> Self {
        let rows = dense
            .into_iter()
            .enumerate()
            .map(|(l, row)| {
                let (lo, hi) = match model {
                    TableModel::Rydberg(params) => params.excited_bounds(l),
                    TableModel::Kmer { .. } => {
                        let lo = row.iter().position(|c| !c.is_zero()).unwrap_or(0);
                        let hi = row.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
                        (lo, hi)
                    }
                };
                for (n, c) in row.iter().enumerate() {
                    assert!(
                        (lo..=hi).contains(&n) || c.is_zero(),
                        "nonzero coefficient outside N-bounds at N = {n}, L = {l}"
                    );
                }
                let counts = row.into_iter().skip(lo).take(hi + 1 - lo).collect();
                CoeffRow { n_min: lo, counts }
            })
            .collect();
        CoeffTable { model, rows }
    }

    pub fn model(&self) -> TableModel {
        self.model
    }

    pub fn l_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, l: usize) -> Option<&BigUint> {
        let row = self.rows.get(l)?;
        row.counts.get(n.checked_sub(row.n_min)?)
    }

    /// `J_{N,L}`, zero for absent keys.
    pub fn count(&self, n: usize, l: usize) -> BigUint {
        self.get(n, l).cloned().unwrap_or_default()
    }

    /// `(N, J_{N,L})` over the stored span of row `L`.
    pub fn row(&self, l: usize) -> impl Iterator<Item = (usize, &BigUint)> + '_ {
        self.rows.get(l).into_iter().flat_map(|r| {
            r.counts
                .iter()
                .enumerate()
                .map(move |(i, c)| (r.n_min + i, c))
        })
    }

    /// `J_L = sum_N J_{N,L}`.
    pub fn total(&self, l: usize) -> BigUint {
        self.row(l).map(|(_, c)| c).sum()
    }

    /// `(N, L, J_{N,L})` ordered by `L`, then `N`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigUint)> + '_ {
        (0..self.rows.len()).flat_map(move |l| self.row(l).map(move |(n, c)| (n, l, c)))
    }
}

/// Coefficients of `F_b(x, y)` up to `y^{l_max}`.
pub fn jammed_counts(params: ModelParams, l_max: usize) -> CoeffTable {
    let enc = BlockEncoding::rydberg(params);
    let g = geometric_inverse(&enc.block, l_max);
    let mut f = multiply(&poly_product(&enc.start, &enc.end), &g, l_max);
    f[0][0] += 1u32;
    CoeffTable::from_dense(TableModel::Rydberg(params), f)
}

/// Coefficients of the k-mer function `F_k(x, y)` up to `y^{l_max}`.
pub fn kmer_counts(k: usize, l_max: usize) -> Result<CoeffTable, GenFuncError> {
    let enc = BlockEncoding::kmer(k)?;
    let g = geometric_inverse(&enc.block, l_max);
    let f = multiply(&poly_product(&enc.start, &enc.end), &g, l_max);
    Ok(CoeffTable::from_dense(TableModel::Kmer { k }, f))
}

struct Signed {
    x_deg: usize,
    y_deg: usize,
    coeff: i64,
}

const fn signed(coeff: i64, x_deg: usize, y_deg: usize) -> Signed {
    Signed {
        x_deg,
        y_deg,
        coeff,
    }
}

/// Second route to `J_{N,L}`: the linear recurrence of the closed form
///
/// ```text
/// F_b = [(1-y)^2 + xy - xy^{b+1} - xy^{b+2} + xy^{2b+2}]
///       / [(1-y)(1 - y - xy^{b+1} + xy^{2b+2})]
/// ```
///
/// over signed integers. Shares no code with [`jammed_counts`].
pub fn jammed_counts_by_recurrence(
    params: ModelParams,
    l_max: usize,
) -> Result<CoeffTable, GenFuncError> {
    let b = params.b();
    let numerator = [
        signed(1, 0, 0),
        signed(-2, 0, 1),
        signed(1, 0, 2),
        signed(1, 1, 1),
        signed(-1, 1, b + 1),
        signed(-1, 1, b + 2),
        signed(1, 1, 2 * b + 2),
    ];
    // (1 - y)(1 - y - x y^{b+1} + x y^{2b+2}) without its constant term.
    let denominator = [
        signed(-2, 0, 1),
        signed(1, 0, 2),
        signed(-1, 1, b + 1),
        signed(1, 1, b + 2),
        signed(1, 1, 2 * b + 2),
        signed(-1, 1, 2 * b + 3),
    ];
    let mut f: Vec<Vec<BigInt>> = (0..=l_max).map(|l| vec![BigInt::zero(); l + 1]).collect();
    for l in 0..=l_max {
        for n in 0..=l {
            let mut acc = BigInt::zero();
            for t in numerator.iter().filter(|t| t.x_deg == n && t.y_deg == l) {
                acc += t.coeff;
            }
            for t in &denominator {
                if t.y_deg <= l && t.x_deg <= n && n - t.x_deg <= l - t.y_deg {
                    acc -= &f[l - t.y_deg][n - t.x_deg] * t.coeff;
                }
            }
            f[l][n] = acc;
        }
    }
    let mut dense = Vec::with_capacity(l_max + 1);
    for (l, row) in f.into_iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (n, v) in row.into_iter().enumerate() {
            match v.into_parts() {
                (Sign::Minus, _) => return Err(GenFuncError::NegativeCoefficient { n, l }),
                (_, mag) => out.push(mag),
            }
        }
        dense.push(out);
    }
    Ok(CoeffTable::from_dense(TableModel::Rydberg(params), dense))
}

/// `J_0..J_{l_max}` from the univariate form
/// `F_b(1, y) = [1 + y (1 + ... + y^b)(1 + ... + y^{b-1})] / [1 - y^{b+1}(1 + ... + y^b)]`.
pub fn total_counts(params: ModelParams, l_max: usize) -> Vec<BigUint> {
    let b = params.b();
    let mut numerator = vec![0u64; 2 * b + 1];
    numerator[0] = 1;
    for i in 0..=b {
        for j in 0..b {
            numerator[1 + i + j] += 1;
        }
    }
    let mut totals: Vec<BigUint> = Vec::with_capacity(l_max + 1);
    for l in 0..=l_max {
        let mut acc = BigUint::from(numerator.get(l).copied().unwrap_or(0));
        for j in b + 1..=(2 * b + 1).min(l) {
            acc += &totals[l - j];
        }
        totals.push(acc);
    }
    totals
}

/// Single coefficient `J_{n,l}` without materialising the whole table.
///
/// Streams the rows of `G = 1/(1 - p_b)` through a window of the last
/// `2b + 1` lengths, restricted to the excited counts that can still reach
/// `(n - 1, l - 1..l - 2b - 1)`. Memory is `O(b * l)` big integers.
pub fn jammed_count(params: ModelParams, n: usize, l: usize) -> BigUint {
    if n == 0 {
        return if l == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    let (lo, hi) = params.excited_bounds(l);
    if n < lo || n > hi {
        return BigUint::zero();
    }
    let b = params.b();
    let target = n - 1;
    let window = 2 * b + 2;
    // Ring of (n_min, counts) rows of G, indexed by length modulo `window`.
    let mut ring: Vec<(usize, Vec<BigUint>)> = vec![(0, Vec::new()); window];
    let get = |ring: &[(usize, Vec<BigUint>)], len: usize, m: usize| -> Option<BigUint> {
        let (n_min, row) = &ring[len % window];
        m.checked_sub(*n_min).and_then(|i| row.get(i)).cloned()
    };
    for len in 0..l {
        // Excited counts in G[len] that can still reach G[l - s][target].
        let g_lo = len.div_ceil(2 * b + 1);
        let g_hi = (len / (b + 1)).min(target);
        let reach_lo = target.saturating_sub((l - 1 - len).div_ceil(b + 1));
        let m_lo = g_lo.max(reach_lo);
        let mut row = Vec::new();
        if len == 0 {
            row.push(BigUint::one());
        } else if m_lo <= g_hi {
            for m in m_lo..=g_hi {
                let mut acc = BigUint::zero();
                if m > 0 {
                    for j in b + 1..=(2 * b + 1).min(len) {
                        if let Some(v) = get(&ring, len - j, m - 1) {
                            acc += v;
                        }
                    }
                }
                row.push(acc);
            }
        }
        ring[len % window] = (if len == 0 { 0 } else { m_lo }, row);
    }
    // F[l][n] = sum over s_b * e_b terms y^{i+j}, i in 0..=b, j in 1..=b+1.
    let mut total = BigUint::zero();
    for i in 0..=b {
        for j in 1..=b + 1 {
            if i + j <= l {
                if let Some(v) = get(&ring, l - i - j, target) {
                    total += v;
                }
            }
        }
    }
    total
}

/// `sum_L J_{N,L}`: number of jammed configurations with exactly `n` excited
/// sites over all lengths. Equals `(b+1)^{n+1}` for `n >= 1` (one choice in
/// `0..=b` for each of the `n + 1` outer and inner gap excesses) and `1` for
/// `n = 0`.
pub fn sum_over_lengths(params: ModelParams, n: usize) -> BigUint {
    // Lengths with n excited sites lie in [(b+1)n - b, (2b+1)n].
    let l_max = (2 * params.b() + 1) * n;
    let table = jammed_counts(params, l_max);
    (0..=l_max).map(|l| table.count(n, l)).sum()
}

/// Closed form of [`sum_over_lengths`] for `n >= 1`.
pub fn closed_universe_count(params: ModelParams, n: usize) -> BigUint {
    BigUint::from(params.b() as u64 + 1).pow(n as u32 + 1)
}

/// Exponential growth rate of `J_L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthRate {
    pub b: usize,
    /// Smallest-modulus root of `1 - y^{b+1}(1 + ... + y^b)`, in `(1/2, 1)`.
    pub y_b: f64,
    /// `1 / y_b`.
    pub w_b: f64,
}

impl GrowthRate {
    pub fn ln_w(&self) -> f64 {
        -libm::log(self.y_b)
    }
}

/// Absolute tolerance of the growth-rate bisection.
pub const GROWTH_RATE_TOLERANCE: f64 = 1e-14;

/// Bisection for `y_b` on `(1/2, 1)`, where `y^{b+1}(1 + ... + y^b) - 1`
/// changes sign.
pub fn growth_rate(params: ModelParams) -> GrowthRate {
    let b = params.b();
    let q = |y: f64| libm::pow(y, (b + 1) as f64) * geometric_sum(y, b) - 1.0;
    let y_b = bisect(q, 0.5, 1.0, GROWTH_RATE_TOLERANCE).expect("q(1/2) < 0 < q(1) brackets y_b");
    GrowthRate {
        b,
        y_b,
        w_b: 1.0 / y_b,
    }
}

/// `J_{l+1} / J_l`, which tends to `w_b`.
pub fn empirical_growth_ratio(params: ModelParams, l: usize) -> f64 {
    let totals = total_counts(params, l + 1);
    libm::exp(ln_biguint(&totals[l + 1]) - ln_biguint(&totals[l]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::enumerate_jammed;

    fn p(b: usize) -> ModelParams {
        ModelParams::new(b).unwrap()
    }

    #[test]
    fn block_encoding_shapes() {
        let e = BlockEncoding::rydberg(p(3));
        assert_eq!(e.start.len(), 4);
        assert!(e.start.iter().all(|m| m.x_deg == 0));
        assert_eq!(
            e.block
                .iter()
                .map(|m| (m.x_deg, m.y_deg))
                .collect::<Vec<_>>(),
            vec![(1, 4), (1, 5), (1, 6), (1, 7)]
        );
        assert_eq!(
            e.end.iter().map(|m| m.y_deg).collect::<Vec<_>>(),
            vec![1, 2, 3, 4]
        );
        assert_eq!(
            BlockEncoding::kmer(1),
            Err(GenFuncError::InvalidKmerSize(1))
        );
    }

    #[test]
    fn l16_b2_counts() {
        let t = jammed_counts(p(2), 16);
        assert_eq!(t.count(4, 16), BigUint::from(45u32));
        assert_eq!(t.count(5, 16), BigUint::from(50u32));
        assert_eq!(t.count(6, 16), BigUint::from(1u32));
        assert_eq!(t.total(16), BigUint::from(96u32));
    }

    #[test]
    fn small_tables_match_brute_force() {
        for b in 1..=3 {
            let t = jammed_counts(p(b), 12);
            for l in 0..=12 {
                let brute = enumerate_jammed(l, p(b)).unwrap();
                for n in 0..=l {
                    assert_eq!(
                        t.count(n, l),
                        BigUint::from(brute.get(n)),
                        "b={b} N={n} L={l}"
                    );
                }
            }
        }
    }

    #[test]
    fn constant_term_is_one() {
        for b in 1..=5 {
            assert_eq!(jammed_counts(p(b), 0).count(0, 0), BigUint::one());
            assert_eq!(total_counts(p(b), 0)[0], BigUint::one());
        }
        assert_eq!(kmer_counts(3, 0).unwrap().count(0, 0), BigUint::one());
    }

    #[test]
    fn recurrence_route_agrees() {
        for b in 1..=4 {
            assert_eq!(
                jammed_counts(p(b), 40),
                jammed_counts_by_recurrence(p(b), 40).unwrap()
            );
        }
    }

    #[test]
    fn totals_agree_with_row_sums() {
        for b in 1..=4 {
            let t = jammed_counts(p(b), 50);
            let totals = total_counts(p(b), 50);
            for (l, total) in totals.iter().enumerate() {
                assert_eq!(&t.total(l), total);
            }
        }
        assert_eq!(total_counts(p(2), 16)[16], BigUint::from(96u32));
        assert_eq!(total_counts(p(1), 3)[3], BigUint::from(2u32));
    }

    #[test]
    fn streaming_count_matches_table() {
        for b in 1..=3 {
            let t = jammed_counts(p(b), 45);
            for l in 0..=45 {
                for n in 0..=l {
                    assert_eq!(jammed_count(p(b), n, l), t.count(n, l), "b={b} N={n} L={l}");
                }
            }
        }
    }

    #[test]
    fn kmer_dimer_on_three_sites() {
        let t = kmer_counts(2, 4).unwrap();
        assert_eq!(t.count(2, 3), BigUint::from(2u32));
        assert_eq!(t.count(0, 0), BigUint::one());
    }

    #[test]
    fn growth_rate_b1() {
        let g = growth_rate(p(1));
        assert!((g.y_b - 0.754_877_666_2).abs() < 1e-10);
        assert!((g.w_b - 1.324_717_957_2).abs() < 1e-10);
        assert!((g.ln_w() - 0.281_199_574_3).abs() < 1e-10);
    }

    #[test]
    fn growth_rate_bracket() {
        for b in 1..=40 {
            let g = growth_rate(p(b));
            assert!(g.y_b > 0.5 && g.y_b < 1.0);
        }
    }

    #[test]
    fn empirical_ratio_tends_to_w() {
        for b in 1..=3 {
            let g = growth_rate(p(b));
            assert!((empirical_growth_ratio(p(b), 400) - g.w_b).abs() < 1e-6);
        }
    }

    #[test]
    fn closed_universe_small() {
        assert_eq!(sum_over_lengths(p(1), 1), BigUint::from(4u32));
        assert_eq!(sum_over_lengths(p(2), 1), BigUint::from(9u32));
        assert_eq!(sum_over_lengths(p(1), 0), BigUint::one());
    }
}
