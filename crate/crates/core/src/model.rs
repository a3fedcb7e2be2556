//! Configurations of the blockade model and the brute-force ground truth.
//!
//! Blockade convention: "`b` sites apart" means that two excited sites have
//! index difference **at least `b + 1`**, i.e. at least `b` neutral sites sit
//! strictly between them. With `b = 1` the string `•◦•` is valid and `••` is
//! not. Every count in the crate depends on this reading; an off-by-one here
//! would shift all of them.
//!
//! A jammed configuration decomposes into blocks `B = •◦…◦` (one excited site
//! followed by exactly `b` neutral sites), each preceded by a gap of
//! `0..=b` neutral sites. The last block may be truncated to `0 <= c < b`
//! trailing neutral sites.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use core::str::FromStr;

/// Default cap on the brute-force scan length (2^26 ≈ 67M bitmasks).
pub const DEFAULT_ENUMERATION_CAP: usize = 26;

/// Largest length a `u64` bitmask can represent.
pub const MAX_BITMASK_LENGTH: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    /// Blockade range must be at least one.
    InvalidBlockadeRange(usize),
    /// Density of the empty configuration is undefined.
    UndefinedDensity,
    /// The brute-force enumerator refuses lengths above its cap.
    CapExceeded { length: usize, cap: usize },
    /// Gap decomposition only exists for jammed configurations.
    NotJammed,
    /// A gap profile must have exactly `b + 1` entries.
    ProfileLength { expected: usize, found: usize },
    /// Unrecognised character while parsing a configuration.
    InvalidSite(char),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::InvalidBlockadeRange(b) => {
                write!(f, "blockade range must be >= 1, got {b}")
            }
            ModelError::UndefinedDensity => {
                write!(f, "density of the empty configuration (L = 0) is undefined")
            }
            ModelError::CapExceeded { length, cap } => write!(
                f,
                "brute-force enumeration is limited to L <= {cap} (2^L configurations), got L = {length}"
            ),
            ModelError::NotJammed => write!(f, "configuration is not jammed"),
            ModelError::ProfileLength { expected, found } => {
                write!(f, "gap profile needs {expected} entries, found {found}")
            }
            ModelError::InvalidSite(c) => write!(
                f,
                "invalid site character {c:?}; use '•', '1', 'x' for excited and '◦', '0', '.' for neutral"
            ),
        }
    }
}

impl core::error::Error for ModelError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Site {
    Neutral,
    Excited,
}

impl Site {
    pub fn is_excited(self) -> bool {
        self == Site::Excited
    }
}

/// Blockade range `b >= 1`. The k-mer size is `b + 1` and is always derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModelParams {
    b: usize,
}

impl ModelParams {
    pub fn new(b: usize) -> Result<Self, ModelError> {
        if b == 0 {
            return Err(ModelError::InvalidBlockadeRange(b));
        }
        Ok(ModelParams { b })
    }

    /// Parameters equivalent to deposition of `k`-mers (`b = k - 1`).
    pub fn from_kmer(k: usize) -> Result<Self, ModelError> {
        Self::new(k.saturating_sub(1))
    }

    #[inline]
    pub fn b(self) -> usize {
        self.b
    }

    #[inline]
    pub fn kmer_size(self) -> usize {
        self.b + 1
    }

    /// Bounds `ceil(L/(2b+1)) <= N <= ceil(L/(b+1))` on the excited count of a
    /// jammed configuration of length `L`.
    pub fn excited_bounds(self, length: usize) -> (usize, usize) {
        (length.div_ceil(2 * self.b + 1), length.div_ceil(self.b + 1))
    }
}

/// A finite row of sites. `L = 0` is the empty configuration, which counts
/// as jammed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Configuration {
    sites: Vec<Site>,
}

impl Configuration {
    pub fn new(sites: Vec<Site>) -> Self {
        Configuration { sites }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a configuration from the excited indices; the rest is neutral.
    pub fn from_excited(length: usize, excited: &[usize]) -> Self {
        let mut sites = vec![Site::Neutral; length];
        for &i in excited {
            sites[i] = Site::Excited;
        }
        Configuration { sites }
    }

    /// Bit `i` of `mask` set means site `i` is excited.
    pub fn from_mask(length: usize, mask: u64) -> Self {
        let sites = (0..length)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    Site::Excited
                } else {
                    Site::Neutral
                }
            })
            .collect();
        Configuration { sites }
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn excited_count(&self) -> usize {
        self.sites.iter().filter(|s| s.is_excited()).count()
    }

    pub fn excited_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.sites
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_excited())
            .map(|(i, _)| i)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sites {
            f.write_str(if s.is_excited() { "•" } else { "◦" })?;
        }
        Ok(())
    }
}

impl FromStr for Configuration {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let sites = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '•' | '1' | 'x' | 'X' | '*' => Ok(Site::Excited),
                '◦' | '0' | '.' | 'o' | '-' => Ok(Site::Neutral),
                other => Err(ModelError::InvalidSite(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Configuration { sites })
    }
}

impl From<&Configuration> for String {
    fn from(c: &Configuration) -> String {
        alloc::format!("{c}")
    }
}

/// True iff every pair of excited sites differs in index by more than `b`.
pub fn is_blockade_valid(config: &Configuration, params: ModelParams) -> bool {
    let mut last: Option<usize> = None;
    for i in config.excited_indices() {
        if let Some(prev) = last {
            if i - prev <= params.b() {
                return false;
            }
        }
        last = Some(i);
    }
    true
}

/// True iff the configuration is valid and no neutral site can be excited.
///
/// Checked through run lengths: interior neutral runs must lie in `[b, 2b]`,
/// boundary runs in `[0, b]`. Among all-neutral strings only `L = 0` is
/// jammed, in agreement with the constant term of the generating function.
pub fn is_jammed(config: &Configuration, params: ModelParams) -> bool {
    if !is_blockade_valid(config, params) {
        return false;
    }
    let b = params.b();
    let mut excited = config.excited_indices();
    let Some(first) = excited.next() else {
        return config.is_empty();
    };
    if first > b {
        return false;
    }
    let mut prev = first;
    for i in excited {
        let run = i - prev - 1;
        if run > 2 * b {
            return false;
        }
        prev = i;
    }
    config.len() - 1 - prev <= b
}

/// Exact density `N / L`, kept as an unreduced numerator/denominator pair.
#[derive(Debug, Clone, Copy, Eq)]
pub struct Density {
    pub excited: usize,
    pub length: usize,
}

impl Density {
    pub fn to_f64(self) -> f64 {
        self.excited as f64 / self.length as f64
    }
}

impl PartialEq for Density {
    fn eq(&self, other: &Self) -> bool {
        self.excited as u128 * other.length as u128 == other.excited as u128 * self.length as u128
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.excited, self.length)
    }
}

pub fn density(config: &Configuration) -> Result<Density, ModelError> {
    if config.is_empty() {
        return Err(ModelError::UndefinedDensity);
    }
    Ok(Density {
        excited: config.excited_count(),
        length: config.len(),
    })
}

/// Bitmask form of [`is_jammed`], used by the enumerator.
///
/// Valid iff no two set bits are within distance `b`; jammed iff in addition
/// every site is within distance `b` of a set bit.
#[inline]
pub fn is_jammed_mask(mask: u64, length: usize, params: ModelParams) -> bool {
    debug_assert!(length <= MAX_BITMASK_LENGTH);
    let full = (1u64 << length) - 1;
    let reach = params.b().min(length.saturating_sub(1));
    let mut covered = mask;
    for d in 1..=reach {
        if mask & (mask >> d) != 0 {
            return false;
        }
        covered |= (mask << d) | (mask >> d);
    }
    covered & full == full
}

/// Jammed-configuration counts `J_{N,L}` for one length, indexed by `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JammedCounts {
    pub length: usize,
    pub params: ModelParams,
    /// `by_excited[n] = J_{n,L}`.
    pub by_excited: Vec<u64>,
}

impl JammedCounts {
    pub fn total(&self) -> u64 {
        self.by_excited.iter().sum()
    }

    pub fn get(&self, n: usize) -> u64 {
        self.by_excited.get(n).copied().unwrap_or(0)
    }

    /// `(N, J_{N,L})` for every nonzero count, ascending in `N`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.by_excited
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(n, &c)| (n, c))
    }

    /// Adds another partial count over a disjoint mask range.
    pub fn merge(&mut self, other: &JammedCounts) {
        for (acc, c) in self.by_excited.iter_mut().zip(&other.by_excited) {
            *acc += c;
        }
    }
}

fn check_cap(length: usize, cap: usize) -> Result<(), ModelError> {
    let cap = cap.min(MAX_BITMASK_LENGTH);
    if length > cap {
        return Err(ModelError::CapExceeded { length, cap });
    }
    Ok(())
}

/// Counts the jammed configurations among masks in `masks`. Partial counts
/// from disjoint ranges can be merged in any order.
pub fn enumerate_mask_range(
    length: usize,
    params: ModelParams,
    masks: Range<u64>,
) -> Result<JammedCounts, ModelError> {
    check_cap(length, MAX_BITMASK_LENGTH)?;
    let mut by_excited = vec![0u64; length + 1];
    for mask in masks {
        if is_jammed_mask(mask, length, params) {
            by_excited[mask.count_ones() as usize] += 1;
        }
    }
    Ok(JammedCounts {
        length,
        params,
        by_excited,
    })
}

/// Brute-force `J_{N,L}` by testing all `2^L` strings, with the default cap.
pub fn enumerate_jammed(length: usize, params: ModelParams) -> Result<JammedCounts, ModelError> {
    enumerate_jammed_with_cap(length, params, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_jammed_with_cap(
    length: usize,
    params: ModelParams,
    cap: usize,
) -> Result<JammedCounts, ModelError> {
    check_cap(length, cap)?;
    enumerate_mask_range(length, params, 0..1u64 << length)
}

/// Every jammed configuration of the given length, in mask order.
pub fn jammed_configurations(
    length: usize,
    params: ModelParams,
    cap: usize,
) -> Result<Vec<Configuration>, ModelError> {
    check_cap(length, cap)?;
    Ok((0..1u64 << length)
        .filter(|&m| is_jammed_mask(m, length, params))
        .map(|m| Configuration::from_mask(length, m))
        .collect())
}

/// Gap counts `M_0..M_b`: `M_a` is the number of blocks preceded by a gap of
/// exactly `a` neutral sites.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GapProfile {
    counts: Vec<u64>,
}

impl GapProfile {
    pub fn new(counts: Vec<u64>, params: ModelParams) -> Result<Self, ModelError> {
        if counts.len() != params.b() + 1 {
            return Err(ModelError::ProfileLength {
                expected: params.b() + 1,
                found: counts.len(),
            });
        }
        Ok(GapProfile { counts })
    }

    pub fn zeros(params: ModelParams) -> Self {
        GapProfile {
            counts: vec![0; params.b() + 1],
        }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// The blockade range this profile belongs to.
    pub fn b(&self) -> usize {
        self.counts.len() - 1
    }

    /// `sum M_a`, the number of blocks (excited sites).
    pub fn blocks(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `sum a * M_a`, the number of gap sites.
    pub fn gap_sites(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(a, &m)| a as u64 * m)
            .sum()
    }

    /// Length of a configuration made of these blocks and gaps.
    pub fn length(&self) -> u64 {
        self.gap_sites() + (self.b() as u64 + 1) * self.blocks()
    }
}

/// Truncated last block: an excited site preceded by `gap` neutral sites and
/// followed by `trailing < b` neutral sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncatedTail {
    pub gap: usize,
    pub trailing: usize,
}

/// Block decomposition of a jammed configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapDecomposition {
    /// Gap before each full block, left to right.
    pub gaps: Vec<usize>,
    /// Counts of `gaps` by size; covers the full-block prefix only.
    pub profile: GapProfile,
    /// Set when the configuration does not end with a full block `B`.
    pub tail: Option<TruncatedTail>,
}

impl GapDecomposition {
    pub fn is_complete(&self) -> bool {
        self.tail.is_none()
    }

    /// Rebuilds the configuration the decomposition came from.
    pub fn reconstruct(&self, params: ModelParams) -> Configuration {
        let b = params.b();
        let mut sites = Vec::new();
        let mut push_block = |gap: usize, trailing: usize| {
            sites.extend(core::iter::repeat(Site::Neutral).take(gap));
            sites.push(Site::Excited);
            sites.extend(core::iter::repeat(Site::Neutral).take(trailing));
        };
        for &gap in &self.gaps {
            push_block(gap, b);
        }
        if let Some(tail) = self.tail {
            push_block(tail.gap, tail.trailing);
        }
        Configuration::new(sites)
    }
}

/// Decomposes a jammed configuration into gaps and blocks `B`.
///
/// For a configuration ending in a full block the reconstruction identities
/// `sum M_a = N` and `sum a M_a = L - (b+1) N` hold. Otherwise the last
/// excited site is reported in [`GapDecomposition::tail`] and the profile
/// describes the prefix of full blocks.
pub fn gap_profile(
    config: &Configuration,
    params: ModelParams,
) -> Result<GapDecomposition, ModelError> {
    if !is_jammed(config, params) {
        return Err(ModelError::NotJammed);
    }
    let b = params.b();
    let excited: Vec<usize> = config.excited_indices().collect();
    let mut gaps = Vec::with_capacity(excited.len());
    // Position right after the previous block's b neutral sites.
    let mut cursor = 0usize;
    for &i in &excited {
        gaps.push(i - cursor);
        cursor = i + 1 + b;
    }
    let mut tail = None;
    if let Some(&last) = excited.last() {
        let trailing = config.len() - 1 - last;
        if trailing < b {
            let gap = gaps.pop().unwrap_or(0);
            tail = Some(TruncatedTail { gap, trailing });
        }
    }
    let mut counts = vec![0u64; b + 1];
    for &g in &gaps {
        debug_assert!(g <= b);
        counts[g] += 1;
    }
    Ok(GapDecomposition {
        gaps,
        profile: GapProfile { counts },
        tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(b: usize) -> ModelParams {
        ModelParams::new(b).unwrap()
    }

    fn c(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn blockade_examples() {
        assert!(is_blockade_valid(&c("•◦•"), p(1)));
        assert!(!is_blockade_valid(&c("••"), p(1)));
        assert!(is_blockade_valid(&c("•◦◦•"), p(2)));
        assert!(!is_blockade_valid(&c("•◦•"), p(2)));
    }

    #[test]
    fn jammed_examples() {
        assert!(is_jammed(&c("◦•◦"), p(1)));
        assert!(!is_jammed(&c("•◦◦"), p(1)));
        // Top configuration of the L = 16, b = 2 example, N = 6.
        let top = c("•◦◦•◦◦•◦◦•◦◦•◦◦•");
        assert_eq!(top.len(), 16);
        assert_eq!(top.excited_count(), 6);
        assert!(is_jammed(&top, p(2)));
        assert!(is_jammed(&c("◦•◦◦•◦◦◦◦•◦◦•◦◦•"), p(2)));
        assert!(is_jammed(&c("•◦◦◦◦•◦◦◦◦•◦◦◦•◦"), p(2)));
    }

    #[test]
    fn all_neutral_only_empty_is_jammed() {
        assert!(is_jammed(&Configuration::empty(), p(1)));
        assert!(!is_jammed(&c("◦"), p(1)));
        assert!(!is_jammed(&c("◦◦"), p(3)));
    }

    #[test]
    fn enumerate_examples() {
        let j = enumerate_jammed(16, p(2)).unwrap();
        assert_eq!(j.total(), 96);
        assert_eq!(
            j.nonzero().collect::<Vec<_>>(),
            vec![(4, 45), (5, 50), (6, 1)]
        );
        let j = enumerate_jammed(0, p(4)).unwrap();
        assert_eq!(j.nonzero().collect::<Vec<_>>(), vec![(0, 1)]);
        let j = enumerate_jammed(3, p(1)).unwrap();
        assert_eq!(j.nonzero().collect::<Vec<_>>(), vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn enumerate_refuses_above_cap() {
        let err = enumerate_jammed(27, p(1)).unwrap_err();
        assert_eq!(
            err,
            ModelError::CapExceeded {
                length: 27,
                cap: 26
            }
        );
        assert!(enumerate_jammed_with_cap(64, p(1), 100).is_err());
    }

    #[test]
    fn density_examples() {
        let d = density(&c("◦•◦")).unwrap();
        assert_eq!(
            d,
            Density {
                excited: 1,
                length: 3
            }
        );
        let d = density(&c("•◦◦•◦◦•◦◦•◦◦•◦◦•")).unwrap();
        assert_eq!((d.excited, d.length), (6, 16));
        assert_eq!(density(&c("•◦•")).unwrap().to_f64(), 2.0 / 3.0);
        assert_eq!(
            density(&Configuration::empty()),
            Err(ModelError::UndefinedDensity)
        );
    }

    #[test]
    fn gap_profile_examples() {
        let d = gap_profile(&c("◦•◦"), p(1)).unwrap();
        assert_eq!(d.profile.counts(), &[0, 1]);
        assert!(d.is_complete());
        let d = gap_profile(&c("•◦•◦"), p(1)).unwrap();
        assert_eq!(d.profile.counts(), &[2, 0]);
        // L = 10, N = 4, ending in B.
        let d = gap_profile(&c("◦•◦◦•◦•◦•◦"), p(1)).unwrap();
        assert_eq!(d.profile.counts(), &[2, 2]);
        assert_eq!(d.profile.length(), 10);
    }

    #[test]
    fn gap_profile_flags_truncated_tail() {
        let d = gap_profile(&c("◦•◦◦•"), p(2)).unwrap();
        assert_eq!(d.gaps, vec![1]);
        assert_eq!(
            d.tail,
            Some(TruncatedTail {
                gap: 0,
                trailing: 0
            })
        );
        assert_eq!(d.reconstruct(p(2)), c("◦•◦◦•"));
        assert_eq!(gap_profile(&c("•◦◦"), p(1)), Err(ModelError::NotJammed));
    }

    #[test]
    fn bounds_for_l16_b2() {
        assert_eq!(p(2).excited_bounds(16), (4, 6));
        assert_eq!(p(1).excited_bounds(0), (0, 0));
    }
}
