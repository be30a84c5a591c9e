//! The eta invariant computed from spectral pairs.
//!
//! A spectral datum is a multiset of pairs `(alpha, w)` with `alpha` a
//! rational in `(-1, 1)` and `w` one of {1, 2}. For `K >= 1`,
//!
//! ```text
//! eta(K) = sum[w = 2, alpha != 0, K*alpha integer] h(alpha, w)
//!          - 2 * sum[alpha <= 0, K*alpha not integer] h(alpha, w) * (1 - 2*{K*alpha})
//! ```
//!
//! where `{.}` is the fractional part and `h` the multiplicity. The
//! signature of the `N`-fold suspension is `eta(N) - N * eta(1)`.

use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::resolution::combine_eta;

/// One spectral pair with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpectralEntry {
    /// Spectral number, a rational in the open interval (-1, 1).
    pub alpha: Rational,
    /// Weight, either 1 or 2.
    pub w: u8,
    /// Multiplicity of the pair, at least 1.
    pub h: u64,
}

/// A validated multiset of spectral pairs.
///
/// Construction merges duplicate `(alpha, w)` entries, sorts the result,
/// and checks the symmetry `h(alpha) = h(-alpha)` of the total
/// multiplicities per spectral number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPairs {
    entries: Vec<SpectralEntry>,
}

impl SpectralPairs {
    pub fn new(entries: Vec<SpectralEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidSpectral("no entries".into()));
        }
        let minus_one = Rational::from_integer(-1);
        let one = Rational::one();
        for e in &entries {
            if e.alpha <= minus_one || e.alpha >= one {
                return Err(Error::InvalidSpectral(format!(
                    "spectral number {} is outside (-1, 1)",
                    e.alpha
                )));
            }
            if e.w != 1 && e.w != 2 {
                return Err(Error::InvalidSpectral(format!(
                    "weight {} is not 1 or 2",
                    e.w
                )));
            }
            if e.h == 0 {
                return Err(Error::InvalidSpectral(
                    "multiplicity must be positive".into(),
                ));
            }
        }

        let mut merged: Vec<SpectralEntry> = Vec::with_capacity(entries.len());
        let mut sorted = entries;
        sorted.sort();
        for e in sorted {
            match merged.last_mut() {
                Some(last) if last.alpha == e.alpha && last.w == e.w => {
                    last.h = last.h.checked_add(e.h).ok_or_else(|| {
                        Error::Overflow("spectral multiplicity exceeds u64".into())
                    })?;
                }
                _ => merged.push(e),
            }
        }

        let total = |alpha: &Rational| -> u64 {
            merged
                .iter()
                .filter(|e| &e.alpha == alpha)
                .map(|e| e.h)
                .sum()
        };
        for e in &merged {
            let mirrored = total(&-&e.alpha);
            if total(&e.alpha) != mirrored {
                return Err(Error::InvalidSpectral(format!(
                    "multiplicities at {} and {} differ",
                    e.alpha, -&e.alpha
                )));
            }
        }

        Ok(SpectralPairs { entries: merged })
    }

    pub fn entries(&self) -> &[SpectralEntry] {
        &self.entries
    }

    /// True when any entry has weight 2.
    pub fn has_weight_two(&self) -> bool {
        self.entries.iter().any(|e| e.w == 2)
    }
}

/// Spectral pairs of the plane curve `x^a + y^b` with coprime `a, b >= 2`.
///
/// The pairs are `(i/a + j/b - 1, 1)` for `0 < i < a`, `0 < j < b`, each
/// with multiplicity 1.
pub fn brieskorn_curve_spectral_pairs(a: u64, b: u64) -> Result<SpectralPairs> {
    if a < 2 || b < 2 {
        return Err(Error::InvalidSpectral(format!(
            "exponents must be at least 2, got {a} and {b}"
        )));
    }
    if crate::algebra::gcd(a, b)? != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    if (a - 1).checked_mul(b - 1).is_none_or(|n| n > 1 << 20) {
        return Err(Error::Overflow(
            "spectral pair count exceeds the supported size".into(),
        ));
    }
    let a_i64 = i64::try_from(a).map_err(|_| Error::Overflow("exponent exceeds i64".into()))?;
    let b_i64 = i64::try_from(b).map_err(|_| Error::Overflow("exponent exceeds i64".into()))?;
    let mut entries = Vec::with_capacity(((a - 1) * (b - 1)) as usize);
    for i in 1..a_i64 {
        for j in 1..b_i64 {
            let alpha = (Rational::new(i, a_i64)? + Rational::new(j, b_i64)?)
                - Rational::one();
            entries.push(SpectralEntry { alpha, w: 1, h: 1 });
        }
    }
    SpectralPairs::new(entries)
}

/// The eta invariant `eta(K)` of a spectral datum.
pub fn eta_spectral(pairs: &SpectralPairs, k: u64) -> Result<Rational> {
    eta_spectral_cancellable(pairs, k, &CancelToken::new())
}

pub fn eta_spectral_cancellable(
    pairs: &SpectralPairs,
    k: u64,
    token: &CancelToken,
) -> Result<Rational> {
    if k == 0 {
        return Err(Error::NonPositiveK(k));
    }
    let k_rational = Rational::from_u64(k);
    let mut first = Rational::zero();
    let mut second = Rational::zero();
    for (index, e) in pairs.entries().iter().enumerate() {
        if index % 64 == 0 {
            token.check()?;
        }
        let scaled = &k_rational * &e.alpha;
        let h = Rational::from_u64(e.h);
        if scaled.is_integer() {
            if e.w == 2 && !e.alpha.is_zero() {
                first = first + h;
            }
        } else if !(Rational::zero() < e.alpha) {
            let weight = Rational::one() - Rational::from_integer(2) * scaled.frac();
            second = second + h * weight;
        }
    }
    Ok(first - Rational::from_integer(2) * second)
}

/// Signature of the `n`-fold suspension from spectral pairs.
pub fn signature_spectral(pairs: &SpectralPairs, n: u64) -> Result<i64> {
    signature_spectral_cancellable(pairs, n, &CancelToken::new())
}

pub fn signature_spectral_cancellable(
    pairs: &SpectralPairs,
    n: u64,
    token: &CancelToken,
) -> Result<i64> {
    if n < 2 {
        return Err(Error::SuspensionTooSmall(n));
    }
    let eta_n = eta_spectral_cancellable(pairs, n, token)?;
    let eta_1 = eta_spectral_cancellable(pairs, 1, token)?;
    combine_eta(n, &eta_n, &eta_1)
}
