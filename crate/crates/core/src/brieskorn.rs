//! Signature of Brieskorn singularities x^c1 + y^c2 + z^c3 by exact
//! lattice-point counting.
//!
//! The counted sets are
//!
//! ```text
//! S_t = #{ (k1, k2, k3) : 1 <= kj <= cj - 1,
//!          t < k1/c1 + k2/c2 + k3/c3 < t + 1 }     for t = 0, 1, 2
//! ```
//!
//! with strict inequalities, and the signature is `S_0 - S_1 + S_2`. Sums
//! that land exactly on an integer are counted separately and contribute
//! nothing. Two counters are provided: a reference triple loop and a fast
//! counter that resolves each `(k1, k2)` row by integer division. Both are
//! exact; the fast counter exists so that they can check each other.

use crate::cancel::CancelToken;
use crate::error::{Error, Result};

/// Validated exponent triple for x^c1 + y^c2 + z^c3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BrieskornExponents {
    c1: u64,
    c2: u64,
    c3: u64,
}

impl BrieskornExponents {
    /// Requires each exponent to be at least 1 and the product small enough
    /// that all internal arithmetic stays inside `i64`.
    pub fn new(c1: u64, c2: u64, c3: u64) -> Result<Self> {
        if c1 == 0 || c2 == 0 || c3 == 0 {
            return Err(Error::InvalidPairs(
                "Brieskorn exponents must be at least 1".into(),
            ));
        }
        let bound = (i64::MAX / 8) as u64;
        let product = c1
            .checked_mul(c2)
            .and_then(|p| p.checked_mul(c3))
            .filter(|&p| p <= bound);
        if product.is_none() {
            return Err(Error::Overflow(format!(
                "exponent product {c1}*{c2}*{c3} exceeds the supported range"
            )));
        }
        Ok(Self { c1, c2, c3 })
    }

    pub fn c1(&self) -> u64 {
        self.c1
    }

    pub fn c2(&self) -> u64 {
        self.c2
    }

    pub fn c3(&self) -> u64 {
        self.c3
    }
}

/// Lattice-point tallies for one exponent triple: `s0, s1, s2` count the
/// three open bands, `integer_sums` counts points whose coordinate sum is
/// exactly 1 or 2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SCounts {
    pub s0: u64,
    pub s1: u64,
    pub s2: u64,
    pub integer_sums: u64,
}

impl SCounts {
    /// Every lattice point falls in exactly one band or on an integer, so
    /// the total is `(c1-1)(c2-1)(c3-1)`.
    pub fn total(&self) -> u64 {
        self.s0 + self.s1 + self.s2 + self.integer_sums
    }

    pub fn signature(&self) -> i64 {
        self.s0 as i64 - self.s1 as i64 + self.s2 as i64
    }

    fn plus(self, other: SCounts) -> SCounts {
        SCounts {
            s0: self.s0 + other.s0,
            s1: self.s1 + other.s1,
            s2: self.s2 + other.s2,
            integer_sums: self.integer_sums + other.integer_sums,
        }
    }
}

/// Reference counter: visits every lattice point and classifies its sum
/// by exact integer comparison.
pub fn s_counts_naive(c: &BrieskornExponents) -> SCounts {
    let (c1, c2, c3) = (c.c1 as i64, c.c2 as i64, c.c3 as i64);
    let d = c1 * c2 * c3;
    let mut counts = SCounts::default();
    for k1 in 1..c1 {
        for k2 in 1..c2 {
            for k3 in 1..c3 {
                let num = k1 * c2 * c3 + k2 * c1 * c3 + k3 * c1 * c2;
                if num % d == 0 {
                    counts.integer_sums += 1;
                } else {
                    match num / d {
                        0 => counts.s0 += 1,
                        1 => counts.s1 += 1,
                        _ => counts.s2 += 1,
                    }
                }
            }
        }
    }
    counts
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// Tallies the `k3` range for one `(k1, k2)` row by integer division.
fn count_row(k1: i64, k2: i64, c1: i64, c2: i64, c3: i64) -> SCounts {
    let p = c1 * c2;
    let d = p * c3;
    let a = k1 * c2 + k2 * c1;
    let b = a * c3;
    let mut out = SCounts::default();
    let band = |t: i64| -> u64 {
        let lo = t * d - b;
        let hi = (t + 1) * d - b;
        let kmin = (div_floor(lo, p) + 1).max(1);
        let kmax = div_floor(hi - 1, p).min(c3 - 1);
        (kmax - kmin + 1).max(0) as u64
    };
    out.s0 = band(0);
    out.s1 = band(1);
    out.s2 = band(2);
    for t in [1, 2] {
        let total = t * d - b;
        if total % p == 0 {
            let k3 = total / p;
            if (1..=c3 - 1).contains(&k3) {
                out.integer_sums += 1;
            }
        }
    }
    out
}

/// Fast counter, sequential over the `(k1, k2)` rows.
pub fn s_counts_fast_seq(c: &BrieskornExponents) -> SCounts {
    let (c1, c2, c3) = (c.c1 as i64, c.c2 as i64, c.c3 as i64);
    let mut counts = SCounts::default();
    for k1 in 1..c1 {
        for k2 in 1..c2 {
            counts = counts.plus(count_row(k1, k2, c1, c2, c3));
        }
    }
    counts
}

/// Fast counter, parallel over `k1` slices.
#[cfg(feature = "parallel")]
pub fn s_counts_fast_par(c: &BrieskornExponents) -> SCounts {
    use rayon::prelude::*;
    let (c1, c2, c3) = (c.c1 as i64, c.c2 as i64, c.c3 as i64);
    (1..c1)
        .into_par_iter()
        .map(|k1| {
            let mut counts = SCounts::default();
            for k2 in 1..c2 {
                counts = counts.plus(count_row(k1, k2, c1, c2, c3));
            }
            counts
        })
        .reduce(SCounts::default, SCounts::plus)
}

/// Fast counter with the default execution strategy for this build.
pub fn s_counts_fast(c: &BrieskornExponents) -> SCounts {
    #[cfg(feature = "parallel")]
    {
        s_counts_fast_par(c)
    }
    #[cfg(not(feature = "parallel"))]
    {
        s_counts_fast_seq(c)
    }
}

/// Fast counter that polls a cancellation token between `k1` slices.
pub fn s_counts_fast_cancellable(
    c: &BrieskornExponents,
    token: &CancelToken,
) -> Result<SCounts> {
    let (c1, c2, c3) = (c.c1 as i64, c.c2 as i64, c.c3 as i64);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (1..c1)
            .into_par_iter()
            .map(|k1| {
                token.check()?;
                let mut counts = SCounts::default();
                for k2 in 1..c2 {
                    counts = counts.plus(count_row(k1, k2, c1, c2, c3));
                }
                Ok(counts)
            })
            .try_reduce(SCounts::default, |a, b| Ok(a.plus(b)))
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut counts = SCounts::default();
        for k1 in 1..c1 {
            token.check()?;
            for k2 in 1..c2 {
                counts = counts.plus(count_row(k1, k2, c1, c2, c3));
            }
        }
        Ok(counts)
    }
}

/// Signature of the Brieskorn singularity via the fast counter.
pub fn brieskorn_signature(c: &BrieskornExponents) -> i64 {
    s_counts_fast(c).signature()
}

pub fn brieskorn_signature_cancellable(
    c: &BrieskornExponents,
    token: &CancelToken,
) -> Result<i64> {
    Ok(s_counts_fast_cancellable(c, token)?.signature())
}
