//! Discrete invariants of an irreducible plane curve germ and the exact
//! conversions between them: Puiseux pairs, characteristic exponents,
//! the multiplicity sequence of the resolution cluster, and the weighted
//! dual resolution graph.

use std::fmt;

use num_integer::gcd as int_gcd;

use crate::error::{Error, Result};
use crate::resolution::ResolutionGraph;

/// Largest supported blowup cluster size for graph conversion.
const MAX_SEQUENCE_WEIGHT: u64 = 1 << 24;

/// Puiseux pairs `(m_1, n_1), ..., (m_l, n_l)` of an irreducible germ.
///
/// Each `n_i >= 2`, `gcd(m_i, n_i) = 1`, `m_1 > n_1`, and
/// `m_{i+1} > n_{i+1} * m_i`. The empty list describes a smooth branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxPairs {
    pairs: Vec<(u64, u64)>,
}

impl PuiseuxPairs {
    pub fn new(pairs: Vec<(u64, u64)>) -> Result<Self> {
        let fail = |msg: String| Err(Error::InvalidPairs(msg));
        for (idx, &(m, n)) in pairs.iter().enumerate() {
            if n < 2 {
                return fail(format!("pair {idx}: n = {n} must be at least 2"));
            }
            if m == 0 || int_gcd(m, n) != 1 {
                return fail(format!("pair {idx}: gcd({m}, {n}) != 1"));
            }
            if idx == 0 {
                if m <= n {
                    return fail(format!("pair 0: m = {m} must exceed n = {n}"));
                }
            } else {
                let (prev_m, _) = pairs[idx - 1];
                if (m as u128) <= (n as u128) * (prev_m as u128) {
                    return fail(format!(
                        "pair {idx}: m = {m} must exceed n * previous m = {n} * {prev_m}"
                    ));
                }
            }
        }
        Ok(Self { pairs })
    }

    /// The smooth branch: no pairs at all.
    pub fn smooth() -> Self {
        Self { pairs: Vec::new() }
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl fmt::Display for PuiseuxPairs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (idx, (m, n)) in self.pairs.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({m},{n})")?;
        }
        write!(f, "]")
    }
}

/// Characteristic exponents `beta_0 < beta_1 < ... < beta_l` with
/// `gcd(beta_0, ..., beta_l) = 1`. The singleton `[1]` is the smooth
/// branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharExponents {
    beta: Vec<u64>,
}

impl CharExponents {
    pub fn new(beta: Vec<u64>) -> Result<Self> {
        let fail = |msg: String| Err(Error::InvalidExponents(msg));
        if beta.is_empty() {
            return fail("at least beta_0 is required".into());
        }
        if beta[0] == 0 {
            return fail("beta_0 must be positive".into());
        }
        let mut g = 0u64;
        for (idx, &b) in beta.iter().enumerate() {
            if idx > 0 && b <= beta[idx - 1] {
                return fail(format!(
                    "exponents must be strictly increasing, got {} after {}",
                    b,
                    beta[idx - 1]
                ));
            }
            g = int_gcd(g, b);
        }
        if g != 1 {
            return fail(format!("gcd of all exponents is {g}, expected 1"));
        }
        Ok(Self { beta })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.beta
    }

    /// Number of Puiseux pairs this system corresponds to.
    pub fn ell(&self) -> usize {
        self.beta.len() - 1
    }
}

/// Multiplicity sequence of the infinitely-near points of the resolution
/// cluster, validated against the proximity law: every entry equals the
/// exact sum of the maximal run of entries proximate to it, and no point
/// is proximate to more than two others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicitySequence {
    entries: Vec<u64>,
}

impl MultiplicitySequence {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        let fail = |msg: String| Err(Error::InvalidSequence(msg));
        if entries.is_empty() {
            return fail("the sequence is empty".into());
        }
        if entries.contains(&0) {
            return fail("multiplicity 0 is not allowed".into());
        }
        if *entries.last().expect("nonempty") != 1 {
            return fail("the sequence must end with the trailing 1 of a free point".into());
        }
        derive_proximity(&entries)?;
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }
}

/// For each point, the indices of the later points proximate to it (a
/// contiguous run just after it summing exactly to its multiplicity), and
/// per point the list of earlier points it is proximate to. Rejects
/// sequences violating the proximity law.
fn derive_proximity(e: &[u64]) -> Result<Vec<Vec<usize>>> {
    let k = e.len();
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); k];
    for i in 0..k.saturating_sub(1) {
        let mut sum = 0u64;
        let mut j = i + 1;
        while j < k && sum + e[j] <= e[i] {
            sum += e[j];
            through[j].push(i);
            j += 1;
        }
        if sum != e[i] {
            return Err(Error::InvalidSequence(format!(
                "the proximity law fails at entry {i}: multiplicity {} has no exact run",
                e[i]
            )));
        }
    }
    for (i, t) in through.iter().enumerate() {
        if t.len() > 2 {
            return Err(Error::InvalidSequence(format!(
                "entry {i} is proximate to {} points, at most 2 are possible",
                t.len()
            )));
        }
        debug_assert!(i == 0 || t.contains(&(i - 1)));
    }
    Ok(through)
}

/// Characteristic exponents from Puiseux pairs:
/// `beta_0 = n_1 * ... * n_l` and `beta_i = m_i * n_{i+1} * ... * n_l`.
pub fn pairs_to_char_exponents(pairs: &PuiseuxPairs) -> Result<CharExponents> {
    let overflow = || Error::Overflow("characteristic exponents exceed u64".into());
    let p = pairs.pairs();
    let mut suffix = vec![1u64; p.len() + 1];
    for i in (0..p.len()).rev() {
        suffix[i] = suffix[i + 1].checked_mul(p[i].1).ok_or_else(overflow)?;
    }
    let mut beta = Vec::with_capacity(p.len() + 1);
    beta.push(suffix[0]);
    for (i, &(m, _)) in p.iter().enumerate() {
        beta.push(m.checked_mul(suffix[i + 1]).ok_or_else(overflow)?);
    }
    CharExponents::new(beta)
}

/// Puiseux pairs from characteristic exponents, via the gcd ladder
/// `g_0 = beta_0`, `g_i = gcd(g_{i-1}, beta_i)`: `n_i = g_{i-1} / g_i`
/// and `m_i = beta_i / g_i`.
pub fn char_exponents_to_pairs(exponents: &CharExponents) -> Result<PuiseuxPairs> {
    let beta = exponents.exponents();
    let mut pairs = Vec::with_capacity(exponents.ell());
    let mut g_prev = beta[0];
    for &b in &beta[1..] {
        let g = int_gcd(g_prev, b);
        let n = g_prev / g;
        let m = b / g;
        if n < 2 {
            return Err(Error::InvalidExponents(format!(
                "beta = {b} does not start a new Puiseux pair (the gcd does not drop)"
            )));
        }
        pairs.push((m, n));
        g_prev = g;
    }
    PuiseuxPairs::new(pairs).map_err(|e| match e {
        Error::InvalidPairs(msg) => Error::InvalidExponents(msg),
        other => other,
    })
}

/// Multiplicities emitted by one Euclidean division chain on `(lo, hi)`:
/// the classical staircase of blowups separating two exponents.
fn euclid_blocks(lo: u64, hi: u64, out: &mut Vec<u64>) {
    let (mut a, mut b) = (hi, lo);
    while b > 0 {
        let q = a / b;
        let r = a % b;
        for _ in 0..q {
            out.push(b);
        }
        a = b;
        b = r;
    }
}

/// Multiplicity sequence of the resolution cluster for `ell >= 1`
/// characteristic exponents: Euclidean staircases for `(beta_0, beta_1)`
/// and then for each `(e_{q-1}, beta_q - beta_{q-1})`, extended with free
/// points of multiplicity 1 until the squares sum to `beta_0 * beta_l`,
/// the intersection number of two generic curves of this type.
pub fn char_exponents_to_mult_sequence(
    exponents: &CharExponents,
) -> Result<MultiplicitySequence> {
    if exponents.ell() == 0 {
        return Err(Error::SmoothBranch);
    }
    let beta = exponents.exponents();
    let last = *beta.last().expect("nonempty");
    let total = beta[0]
        .checked_mul(last)
        .filter(|&t| t <= MAX_SEQUENCE_WEIGHT)
        .ok_or_else(|| {
            Error::Overflow(format!(
                "the resolution cluster weight beta_0 * beta_l exceeds the supported bound {MAX_SEQUENCE_WEIGHT}"
            ))
        })?;

    let mut seq = Vec::new();
    euclid_blocks(beta[0], beta[1], &mut seq);
    let mut e = int_gcd(beta[0], beta[1]);
    for q in 2..beta.len() {
        let delta = beta[q] - beta[q - 1];
        euclid_blocks(e, delta, &mut seq);
        e = int_gcd(e, delta);
    }
    debug_assert_eq!(e, 1);

    let squares: u64 = seq.iter().map(|&v| v * v).sum();
    if squares > total {
        return Err(Error::InvalidExponents(
            "the exponents produce an inconsistent blowup cluster".into(),
        ));
    }
    seq.resize(seq.len() + (total - squares) as usize, 1);
    MultiplicitySequence::new(seq)
}

/// Dual resolution graph from a multiplicity sequence. Vertex `i` is the
/// exceptional curve of the `i`-th blowup with the total-transform
/// multiplicity `N_i = e_i + sum of N_j over the points j that point i is
/// proximate to`; blowing up a satellite point separates the two curves
/// it lies on. One arrowhead is attached to the last vertex.
pub fn mult_sequence_to_resolution_graph(
    seq: &MultiplicitySequence,
) -> Result<ResolutionGraph> {
    let e = seq.entries();
    let k = e.len();
    if k >= u32::MAX as usize {
        return Err(Error::Overflow("too many blowups for a graph".into()));
    }
    let through = derive_proximity(e)?;

    let mut mult = vec![0u64; k];
    let mut edges: std::collections::BTreeSet<(u32, u32)> = std::collections::BTreeSet::new();
    for i in 0..k {
        let mut n_i = e[i];
        for &j in &through[i] {
            n_i = n_i
                .checked_add(mult[j])
                .ok_or_else(|| Error::Overflow("vertex multiplicity exceeds u64".into()))?;
        }
        mult[i] = n_i;
        if let [j1, j2] = through[i][..] {
            let (a, b) = (j1.min(j2) as u32, j1.max(j2) as u32);
            edges.remove(&(a, b));
        }
        for &j in &through[i] {
            let (a, b) = ((i.min(j)) as u32, (i.max(j)) as u32);
            edges.insert((a, b));
        }
    }

    let exceptional: Vec<(u32, u64)> = mult
        .iter()
        .enumerate()
        .map(|(i, &m)| (i as u32, m))
        .collect();
    let arrow = k as u32;
    let mut edge_list: Vec<(u32, u32)> = edges.into_iter().collect();
    edge_list.push((arrow - 1, arrow));
    ResolutionGraph::new(exceptional, vec![arrow], edge_list)
}

/// Full conversion chain from Puiseux pairs to the resolution graph.
pub fn pairs_to_resolution_graph(pairs: &PuiseuxPairs) -> Result<ResolutionGraph> {
    if pairs.is_empty() {
        return Err(Error::SmoothBranch);
    }
    let exponents = pairs_to_char_exponents(pairs)?;
    let seq = char_exponents_to_mult_sequence(&exponents)?;
    mult_sequence_to_resolution_graph(&seq)
}
