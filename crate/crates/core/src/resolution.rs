//! Dual resolution graphs and the eta invariant computed from them.
//!
//! A graph carries the exceptional curves of an embedded resolution as
//! weighted vertices (the weight is the multiplicity of the pulled-back
//! curve along that component), arrowhead vertices of multiplicity 1 for
//! the strict transform, and the incidence edges. The graph must be a
//! tree. For `K >= 1` the invariant is
//!
//! ```text
//! eta(K) = #arrowheads - 1
//!        + sum over edges  of gcd(K, gcd(m_u, m_v)) - 1
//!        - sum over vertices of gcd(K, M_w) - 1
//!        + 4 * sum over vertices w of degree >= 3, neighbors v,
//!              k = 1..m_w of ((k*m_v / m_w)) * ((k*K / m_w))
//! ```
//!
//! where `M_w` is the gcd of the multiplicities of `w` and all of its
//! neighbors, `((.))` is the sawtooth bracket, and the vertex sums run
//! over exceptional vertices only. The signature of the suspension with
//! exponent `N` is `eta(N) - N * eta(1)`.

use std::collections::BTreeMap;

use num_integer::gcd as int_gcd;

use crate::algebra::Rational;
use crate::cancel::CancelToken;
use crate::error::{Error, Result};

/// Largest supported multiplicity; keeps the sawtooth accumulator inside
/// `i128` with room to spare.
const MAX_MULTIPLICITY: u64 = 1 << 31;

/// Weighted dual graph of an embedded resolution. Always a tree with at
/// least one exceptional vertex and at least one arrowhead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionGraph {
    exceptional: Vec<(u32, u64)>,
    arrowheads: Vec<u32>,
    edges: Vec<(u32, u32)>,
    multiplicity: BTreeMap<u32, u64>,
    adjacency: BTreeMap<u32, Vec<u32>>,
}

impl ResolutionGraph {
    /// Validates and builds a graph from `(id, multiplicity)` pairs for the
    /// exceptional vertices, arrowhead ids, and undirected edges.
    pub fn new(
        exceptional: Vec<(u32, u64)>,
        arrowheads: Vec<u32>,
        edges: Vec<(u32, u32)>,
    ) -> Result<Self> {
        let fail = |msg: String| Err(Error::InvalidGraph(msg));
        if exceptional.is_empty() {
            return fail("at least one exceptional vertex is required".into());
        }
        if arrowheads.is_empty() {
            return fail("at least one arrowhead is required".into());
        }

        let mut multiplicity: BTreeMap<u32, u64> = BTreeMap::new();
        for &(id, m) in &exceptional {
            if m == 0 {
                return fail(format!("vertex {id} has multiplicity 0"));
            }
            if m > MAX_MULTIPLICITY {
                return fail(format!(
                    "vertex {id} has multiplicity {m}, above the supported bound {MAX_MULTIPLICITY}"
                ));
            }
            if multiplicity.insert(id, m).is_some() {
                return fail(format!("duplicate vertex id {id}"));
            }
        }
        for &id in &arrowheads {
            if multiplicity.insert(id, 1).is_some() {
                return fail(format!("duplicate vertex id {id}"));
            }
        }

        let mut adjacency: BTreeMap<u32, Vec<u32>> =
            multiplicity.keys().map(|&id| (id, Vec::new())).collect();
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in &edges {
            if u == v {
                return fail(format!("self-loop at vertex {u}"));
            }
            if !multiplicity.contains_key(&u) || !multiplicity.contains_key(&v) {
                return fail(format!("edge ({u}, {v}) references an unknown vertex"));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return fail(format!("duplicate edge ({u}, {v})"));
            }
            adjacency.get_mut(&u).expect("endpoint exists").push(v);
            adjacency.get_mut(&v).expect("endpoint exists").push(u);
        }

        if edges.len() + 1 != multiplicity.len() {
            return fail(format!(
                "a tree on {} vertices needs {} edges, found {}",
                multiplicity.len(),
                multiplicity.len() - 1,
                edges.len()
            ));
        }
        let start = *multiplicity.keys().next().expect("nonempty");
        let mut stack = vec![start];
        let mut visited = std::collections::BTreeSet::from([start]);
        while let Some(v) = stack.pop() {
            for &w in &adjacency[&v] {
                if visited.insert(w) {
                    stack.push(w);
                }
            }
        }
        if visited.len() != multiplicity.len() {
            return fail("the graph is not connected".into());
        }

        for &id in &arrowheads {
            let deg = adjacency[&id].len();
            if deg != 1 {
                return fail(format!("arrowhead {id} has degree {deg}, expected 1"));
            }
        }

        Ok(Self {
            exceptional,
            arrowheads,
            edges,
            multiplicity,
            adjacency,
        })
    }

    pub fn exceptional(&self) -> &[(u32, u64)] {
        &self.exceptional
    }

    pub fn arrowheads(&self) -> &[u32] {
        &self.arrowheads
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Multiplicity of any vertex; arrowheads carry multiplicity 1.
    pub fn multiplicity(&self, id: u32) -> Option<u64> {
        self.multiplicity.get(&id).copied()
    }

    fn neighbors(&self, id: u32) -> &[u32] {
        &self.adjacency[&id]
    }
}

/// Sawtooth cross-sum `sum_{k=1..m} ((k*a/m)) * ((k*b/m))` returned as the
/// exact numerator over the common denominator `4*m^2`. Terms where either
/// residue vanishes are zero by the bracket's definition, which is also why
/// including or excluding the `k = m` endpoint makes no difference.
fn sawtooth_cross_sum_cancellable(
    m: u64,
    a: u64,
    b: u64,
    token: &CancelToken,
) -> Result<i128> {
    const CHUNK: u64 = 1 << 15;
    let mi = m as i128;
    let a = (a as i128).rem_euclid(mi);
    let b = (b as i128).rem_euclid(mi);
    let mut num = 0i128;
    let mut r1 = 0i128;
    let mut r2 = 0i128;
    let mut k = 0u64;
    while k < m {
        token.check()?;
        let stop = (k + CHUNK).min(m);
        while k < stop {
            r1 += a;
            if r1 >= mi {
                r1 -= mi;
            }
            r2 += b;
            if r2 >= mi {
                r2 -= mi;
            }
            if r1 != 0 && r2 != 0 {
                num += (2 * r1 - mi) * (2 * r2 - mi);
            }
            k += 1;
        }
    }
    Ok(num)
}

fn rupture_terms(graph: &ResolutionGraph) -> Vec<(u64, u64)> {
    let mut terms = Vec::new();
    for &(w, mw) in graph.exceptional() {
        let neighbors = graph.neighbors(w);
        if neighbors.len() < 3 {
            continue;
        }
        for &v in neighbors {
            let mv = graph.multiplicity(v).expect("neighbor exists");
            terms.push((mw, mv));
        }
    }
    terms
}

fn eta_integer_part(graph: &ResolutionGraph, k: u64) -> i128 {
    let mut total = graph.arrowheads().len() as i128 - 1;
    for &(u, v) in graph.edges() {
        let mu = graph.multiplicity(u).expect("endpoint exists");
        let mv = graph.multiplicity(v).expect("endpoint exists");
        total += (int_gcd(k, int_gcd(mu, mv)) - 1) as i128;
    }
    for &(w, mw) in graph.exceptional() {
        let mut closed = mw;
        for &v in graph.neighbors(w) {
            closed = int_gcd(closed, graph.multiplicity(v).expect("neighbor exists"));
        }
        total -= (int_gcd(k, closed) - 1) as i128;
    }
    total
}

fn big_ratio(num: i128, den: u128) -> Rational {
    Rational::from_big(num.into(), den.into()).expect("denominator is nonzero")
}

/// Eta invariant of the graph at `K = k`.
pub fn eta_resolution(graph: &ResolutionGraph, k: u64) -> Result<Rational> {
    eta_resolution_cancellable(graph, k, &CancelToken::new())
}

pub fn eta_resolution_cancellable(
    graph: &ResolutionGraph,
    k: u64,
    token: &CancelToken,
) -> Result<Rational> {
    if k == 0 {
        return Err(Error::NonPositiveK(k));
    }
    let integer_part = Rational::from_bigint(eta_integer_part(graph, k).into());
    let terms = rupture_terms(graph);

    #[cfg(feature = "parallel")]
    let sawtooth_part: Rational = {
        use rayon::prelude::*;
        let parts: Vec<Rational> = terms
            .par_iter()
            .map(|&(mw, mv)| {
                let num = sawtooth_cross_sum_cancellable(mw, mv, k, token)?;
                Ok(big_ratio(num, 4 * (mw as u128) * (mw as u128)))
            })
            .collect::<Result<_>>()?;
        parts
            .into_iter()
            .fold(Rational::zero(), |acc, part| acc + part)
    };
    #[cfg(not(feature = "parallel"))]
    let sawtooth_part: Rational = {
        let mut acc = Rational::zero();
        for &(mw, mv) in &terms {
            let num = sawtooth_cross_sum_cancellable(mw, mv, k, token)?;
            acc += &big_ratio(num, 4 * (mw as u128) * (mw as u128));
        }
        acc
    };

    Ok(integer_part + Rational::from_integer(4) * sawtooth_part)
}

/// Signature of the suspension with exponent `n`, via
/// `eta(n) - n * eta(1)`. The combination is always an integer for
/// consistent input data; a non-integer result is reported as an error.
pub fn signature_resolution(graph: &ResolutionGraph, n: u64) -> Result<i64> {
    signature_resolution_cancellable(graph, n, &CancelToken::new())
}

pub fn signature_resolution_cancellable(
    graph: &ResolutionGraph,
    n: u64,
    token: &CancelToken,
) -> Result<i64> {
    let (eta_n, eta_1) = eta_pair_cancellable(graph, n, token)?;
    combine_eta(n, &eta_n, &eta_1)
}

/// Both eta values needed for a signature, computed in one pass.
pub fn eta_pair_cancellable(
    graph: &ResolutionGraph,
    n: u64,
    token: &CancelToken,
) -> Result<(Rational, Rational)> {
    if n < 2 {
        return Err(Error::SuspensionTooSmall(n));
    }
    let eta_n = eta_resolution_cancellable(graph, n, token)?;
    let eta_1 = eta_resolution_cancellable(graph, 1, token)?;
    Ok((eta_n, eta_1))
}

/// Combines `eta(n)` and `eta(1)` into the integer signature.
pub fn combine_eta(n: u64, eta_n: &Rational, eta_1: &Rational) -> Result<i64> {
    let value = eta_n - &(Rational::from_u64(n) * eta_1);
    if !value.is_integer() {
        return Err(Error::NonIntegerSignature {
            n,
            eta_n: eta_n.to_string(),
            eta_1: eta_1.to_string(),
        });
    }
    value
        .to_i64()
        .ok_or_else(|| Error::Overflow("signature exceeds i64".into()))
}

/// For the graph of an irreducible branch the edge and vertex gcd sums in
/// eta cancel exactly; this checks that identity at one value of `K`.
pub fn irreducible_identity_check(graph: &ResolutionGraph, k: u64) -> Result<bool> {
    if k == 0 {
        return Err(Error::NonPositiveK(k));
    }
    let mut edge_sum: i128 = 0;
    for &(u, v) in graph.edges() {
        let mu = graph.multiplicity(u).expect("endpoint exists");
        let mv = graph.multiplicity(v).expect("endpoint exists");
        edge_sum += (int_gcd(k, int_gcd(mu, mv)) - 1) as i128;
    }
    let mut vertex_sum: i128 = 0;
    for &(w, mw) in graph.exceptional() {
        let mut closed = mw;
        for &v in graph.neighbors(w) {
            closed = int_gcd(closed, graph.multiplicity(v).expect("neighbor exists"));
        }
        vertex_sum += (int_gcd(k, closed) - 1) as i128;
    }
    Ok(edge_sum == vertex_sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(num: i64, den: i64) -> Rational {
        Rational::new(num, den).unwrap()
    }

    /// Cusp y^2 = x^3: chain multiplicities 2, 3, 6 with the arrowhead on
    /// the 6-vertex.
    fn cusp_graph() -> ResolutionGraph {
        ResolutionGraph::new(
            vec![(0, 2), (1, 3), (2, 6)],
            vec![3],
            vec![(0, 2), (1, 2), (2, 3)],
        )
        .unwrap()
    }

    fn star_graph(center_m: u64, arrows: u32) -> ResolutionGraph {
        ResolutionGraph::new(
            vec![(0, center_m)],
            (1..=arrows).collect(),
            (1..=arrows).map(|a| (0, a)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn validation_rejects_malformed_graphs() {
        let err = |g: Result<ResolutionGraph>| matches!(g, Err(Error::InvalidGraph(_)));
        assert!(err(ResolutionGraph::new(vec![], vec![1], vec![])));
        assert!(err(ResolutionGraph::new(vec![(0, 2)], vec![], vec![])));
        assert!(err(ResolutionGraph::new(
            vec![(0, 0)],
            vec![1],
            vec![(0, 1)]
        )));
        assert!(err(ResolutionGraph::new(
            vec![(0, 2), (0, 3)],
            vec![1],
            vec![(0, 1)]
        )));
        assert!(err(ResolutionGraph::new(
            vec![(0, 2)],
            vec![1],
            vec![(0, 1), (0, 1)]
        )));
        assert!(err(ResolutionGraph::new(
            vec![(0, 2), (1, 3)],
            vec![2],
            vec![(0, 2)]
        )));
        assert!(err(ResolutionGraph::new(
            vec![(0, 2)],
            vec![1, 2],
            vec![(0, 1), (0, 2), (1, 2)]
        )));
    }

    #[test]
    fn cusp_eta_fixtures() {
        let g = cusp_graph();
        assert_eq!(eta_resolution(&g, 1).unwrap(), r(4, 3));
        assert_eq!(eta_resolution(&g, 2).unwrap(), r(2, 3));
        assert_eq!(eta_resolution(&g, 6).unwrap(), r(0, 1));
        assert_eq!(signature_resolution(&g, 2).unwrap(), -2);
    }

    #[test]
    fn eta_rejects_k_zero_and_small_n() {
        let g = cusp_graph();
        assert_eq!(eta_resolution(&g, 0), Err(Error::NonPositiveK(0)));
        assert_eq!(
            signature_resolution(&g, 1),
            Err(Error::SuspensionTooSmall(1))
        );
    }

    #[test]
    fn star_fixtures() {
        let ten = star_graph(10, 10);
        assert_eq!(eta_resolution(&ten, 1).unwrap(), r(33, 1));
        assert_eq!(eta_resolution(&ten, 6).unwrap(), r(9, 1));
        assert_eq!(signature_resolution(&ten, 6).unwrap(), -189);
        let twenty = star_graph(20, 20);
        assert_eq!(signature_resolution(&twenty, 6).unwrap(), -779);
    }

    #[test]
    fn eta_is_invariant_under_relabeling() {
        let g = cusp_graph();
        let relabeled = ResolutionGraph::new(
            vec![(7, 3), (90, 6), (4, 2)],
            vec![12],
            vec![(90, 12), (90, 7), (4, 90)],
        )
        .unwrap();
        for k in 1..=12 {
            assert_eq!(
                eta_resolution(&g, k).unwrap(),
                eta_resolution(&relabeled, k).unwrap(),
                "K = {k}"
            );
        }
        assert_eq!(
            signature_resolution(&relabeled, 2).unwrap(),
            signature_resolution(&g, 2).unwrap()
        );
    }

    #[test]
    fn sawtooth_cross_sum_endpoint_is_irrelevant() {
        for (m, a, b) in [(6u64, 3u64, 2u64), (10, 7, 3), (12, 8, 5), (7, 2, 1)] {
            let inclusive =
                sawtooth_cross_sum_cancellable(m, a, b, &CancelToken::new()).unwrap();
            let mut exclusive = 0i128;
            for k in 1..m {
                let r1 = ((k * a) % m) as i128;
                let r2 = ((k * b) % m) as i128;
                if r1 != 0 && r2 != 0 {
                    exclusive += (2 * r1 - m as i128) * (2 * r2 - m as i128);
                }
            }
            assert_eq!(inclusive, exclusive, "m={m} a={a} b={b}");
        }
    }

    #[test]
    fn identity_holds_on_the_cusp_chain() {
        let g = cusp_graph();
        for k in 1..=20 {
            assert!(irreducible_identity_check(&g, k).unwrap(), "K = {k}");
        }
    }

    #[test]
    fn cancellation_interrupts_eta() {
        let g = star_graph(1 << 20, 3);
        let token = CancelToken::new();
        token.cancel();
        assert_eq!(
            eta_resolution_cancellable(&g, 5, &token),
            Err(Error::Cancelled)
        );
    }
}
