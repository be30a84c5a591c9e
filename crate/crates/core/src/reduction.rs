//! Reduction of a suspension signature to a weighted sum of Brieskorn
//! signatures.
//!
//! For a branch with Puiseux pairs `(m_1, n_1), ..., (m_l, n_l)` and a
//! suspension exponent `N`, the reduced exponents are
//!
//! ```text
//! a_1 = m_1,    a_{i+1} = m_{i+1} - n_{i+1} * (m_i - n_i * a_i)
//! ```
//!
//! and the weights are `d_l = 1`, `d_i = gcd(N, n_{i+1} * ... * n_l)`.
//! The signature of the suspension is then
//! `sum of d_i * signature(a_i, n_i, N / d_i)`.

use num_integer::gcd as int_gcd;

use crate::brieskorn::{brieskorn_signature_cancellable, BrieskornExponents};
use crate::cancel::CancelToken;
use crate::curve::PuiseuxPairs;
use crate::error::{Error, Result};

/// The exponents and weights of the Brieskorn summands for one branch and
/// one suspension exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionPlan {
    n: u64,
    a: Vec<u64>,
    d: Vec<u64>,
    summands: Vec<BrieskornExponents>,
}

impl ReductionPlan {
    /// Suspension exponent the plan was built for.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Reduced exponents `a_i`.
    pub fn a(&self) -> &[u64] {
        &self.a
    }

    /// Weights `d_i`.
    pub fn d(&self) -> &[u64] {
        &self.d
    }

    /// Brieskorn exponent triples `(a_i, n_i, N / d_i)`.
    pub fn summands(&self) -> &[BrieskornExponents] {
        &self.summands
    }
}

/// Builds the reduction plan for a singular branch and `n >= 2`.
pub fn reduction_plan(pairs: &PuiseuxPairs, n: u64) -> Result<ReductionPlan> {
    if pairs.is_empty() {
        return Err(Error::SmoothBranch);
    }
    if n < 2 {
        return Err(Error::SuspensionTooSmall(n));
    }
    let p = pairs.pairs();
    let ell = p.len();

    let mut a: Vec<u64> = Vec::with_capacity(ell);
    a.push(p[0].0);
    for i in 1..ell {
        let (m_next, n_next) = p[i];
        let (m_prev, n_prev) = p[i - 1];
        let prev_a = a[i - 1] as i128;
        let value =
            m_next as i128 - n_next as i128 * (m_prev as i128 - n_prev as i128 * prev_a);
        let value: u64 = value
            .try_into()
            .map_err(|_| Error::Overflow("reduced exponent exceeds u64".into()))?;
        a.push(value);
    }

    let mut suffix_mod = vec![1u64; ell + 1];
    for i in (0..ell).rev() {
        suffix_mod[i] = ((suffix_mod[i + 1] as u128 * p[i].1 as u128) % n as u128) as u64;
    }
    let d: Vec<u64> = (0..ell).map(|i| int_gcd(n, suffix_mod[i + 1])).collect();

    let summands: Vec<BrieskornExponents> = (0..ell)
        .map(|i| BrieskornExponents::new(a[i], p[i].1, n / d[i]))
        .collect::<Result<_>>()?;

    Ok(ReductionPlan { n, a, d, summands })
}

/// Signature of the suspension via the Brieskorn reduction.
pub fn signature_puiseux(pairs: &PuiseuxPairs, n: u64) -> Result<i64> {
    signature_puiseux_cancellable(pairs, n, &CancelToken::new())
}

pub fn signature_puiseux_cancellable(
    pairs: &PuiseuxPairs,
    n: u64,
    token: &CancelToken,
) -> Result<i64> {
    let plan = reduction_plan(pairs, n)?;
    let mut total: i128 = 0;
    for (i, summand) in plan.summands().iter().enumerate() {
        let value = brieskorn_signature_cancellable(summand, token)?;
        total += plan.d()[i] as i128 * value as i128;
    }
    total
        .try_into()
        .map_err(|_| Error::Overflow("signature exceeds i64".into()))
}
