//! Rational Newton iteration for the Puiseux pairs of an irreducible
//! plane curve germ.
//!
//! The expansion walks the Newton polygon of `g`: each step requires a
//! single compact face whose segment equation is a perfect power of one
//! rational linear factor, takes the rational `p`-th root of that root as
//! the next coefficient, and transforms `x -> x^p`, `y -> x^q (c + y)`.
//! Germs that branch (several faces, or a segment equation with several
//! distinct roots) are rejected as reducible; segment equations whose
//! root would live in a field extension are rejected with a pointer to
//! the alternative input formats. Both refusals are deliberate: this
//! engine only ever reports pairs it has certified over the rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::algebra::{binomial, Rational};
use crate::curve::PuiseuxPairs;
use crate::error::{Error, Result};
use crate::poly::BivariatePoly;

const MAX_ITER: usize = 4096;

type TermMap = BTreeMap<(u64, u64), Rational>;

/// Certified expansion of one branch: the Puiseux pairs together with the
/// parametrization that produced them.
///
/// The parametrization is `x = t^x_order`, `y = sum of c * t^e` over
/// `terms` (roles of `x` and `y` exchanged when `transposed` is set; the
/// iteration swaps the axes once when the branch exponent is below 1).
/// With `exact` set the parametrization satisfies `g` identically;
/// otherwise the tail of the series past the last characteristic step has
/// been dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchExpansion {
    pairs: PuiseuxPairs,
    x_order: u64,
    terms: Vec<(u64, Rational)>,
    transposed: bool,
    exact: bool,
}

impl BranchExpansion {
    pub fn pairs(&self) -> &PuiseuxPairs {
        &self.pairs
    }

    pub fn x_order(&self) -> u64 {
        self.x_order
    }

    pub fn terms(&self) -> &[(u64, Rational)] {
        &self.terms
    }

    pub fn is_transposed(&self) -> bool {
        self.transposed
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Evaluates `g` along the parametrization, as a series in `t`. An
    /// empty result certifies that the parametrization lies on the curve.
    pub fn residual(&self, g: &BivariatePoly) -> Result<Vec<(u64, Rational)>> {
        let poly = if self.transposed { g.transpose() } else { g.clone() };
        poly.eval_parametrization(self.x_order, &self.terms)
    }
}

struct Step {
    p: u64,
    q: u64,
    c: Rational,
}

enum Outcome {
    Done { steps: Vec<Step>, exact: bool },
    SwapAxes,
}

fn to_term_map(g: &BivariatePoly) -> TermMap {
    g.terms()
        .map(|(&(i, j), c)| ((i as u64, j as u64), c.clone()))
        .collect()
}

/// Points of the support not dominated componentwise by another point.
fn minimal_points(terms: &TermMap) -> Vec<(u64, u64)> {
    let pts: Vec<(u64, u64)> = terms.keys().copied().collect();
    pts.iter()
        .copied()
        .filter(|&(i, j)| {
            !pts.iter()
                .any(|&(a, b)| (a, b) != (i, j) && a <= i && b <= j)
        })
        .collect()
}

/// Lower convex hull of points sorted by `i`; vertices only.
fn lower_hull(mut pts: Vec<(u64, u64)>) -> Vec<(u64, u64)> {
    pts.sort_unstable();
    let mut hull: Vec<(u64, u64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            let cross = (x2 as i128 - x1 as i128) * (p.1 as i128 - y1 as i128)
                - (y2 as i128 - y1 as i128) * (p.0 as i128 - x1 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

fn exact_nth_root(n: &BigInt, p: u32) -> Option<BigInt> {
    let root = n.nth_root(p);
    (root.pow(p) == *n).then_some(root)
}

/// Rational `c` with `c^p = r`, when one exists.
fn rational_root(r: &Rational, p: u64) -> Option<Rational> {
    if p == 1 {
        return Some(r.clone());
    }
    if p.is_multiple_of(2) && r.is_negative() {
        return None;
    }
    let p: u32 = p.try_into().ok()?;
    let num = exact_nth_root(&r.numer().abs(), p)?;
    let den = exact_nth_root(r.denom(), p)?;
    let c = Rational::from_big(num, den).expect("root of a positive denominator");
    Some(if r.is_negative() { -c } else { c })
}

fn reducible(detail: &str) -> Error {
    Error::ReducibleCurve {
        detail: detail.into(),
    }
}

fn expand(start: &TermMap, may_swap: bool) -> Result<Outcome> {
    let mut h = start.clone();
    let mut steps: Vec<Step> = Vec::new();
    let mut first = true;
    for _ in 0..MAX_ITER {
        if h.keys().all(|&(_, j)| j > 0) {
            let k_min = h.keys().map(|&(_, j)| j).min().expect("nonempty");
            if h.contains_key(&(0, k_min)) {
                return Ok(Outcome::Done { steps, exact: true });
            }
            return Err(reducible("the last substitution left the axis branch plus more"));
        }
        if !first && h.contains_key(&(0, 1)) {
            return Ok(Outcome::Done {
                steps,
                exact: false,
            });
        }

        let hull = lower_hull(minimal_points(&h));
        if hull.len() > 2 {
            return Err(reducible("the Newton polygon has several compact faces"));
        }
        if hull.len() < 2 || hull[0].0 != 0 || hull[hull.len() - 1].1 != 0 {
            return Err(reducible("the Newton polygon face does not span both axes"));
        }
        let (i0, j0) = hull[0];
        let (i1, j1) = hull[1];
        let (di, dj) = (i1 - i0, j0 - j1);
        let face_gcd = di.gcd(&dj);
        let (q, p) = (di / face_gcd, dj / face_gcd);
        if first && q < p {
            if may_swap {
                return Ok(Outcome::SwapAxes);
            }
            return Err(reducible("the branch exponent stayed below 1 after a swap"));
        }
        first = false;

        let l = dj / p;
        let lc = h.get(&(i0, j0)).expect("hull vertex is a term").clone();
        let rho_1 = h
            .get(&(i0 + q, j0 - p))
            .cloned()
            .unwrap_or_else(Rational::zero);
        let l_rational = Rational::from_u64(l);
        let r = -(rho_1 * (l_rational * lc.clone()).recip()?);
        for s in 0..=l {
            let expected = lc.clone()
                * Rational::from_bigint(binomial(l, s))
                * (-&r).pow(s as u32);
            let actual = h
                .get(&(i0 + s * q, j0 - s * p))
                .cloned()
                .unwrap_or_else(Rational::zero);
            if actual != expected {
                return Err(reducible(
                    "the segment equation has several distinct roots",
                ));
            }
        }
        if r.is_zero() {
            return Err(reducible("the segment equation is degenerate"));
        }
        let c = rational_root(&r, p).ok_or_else(|| Error::FieldExtensionRequired {
            detail: format!("a rational {p}-th root of {r} is needed"),
        })?;

        let m_min = h
            .keys()
            .map(|&(i, j)| i as u128 * p as u128 + j as u128 * q as u128)
            .min()
            .expect("nonempty");
        let mut next: TermMap = BTreeMap::new();
        for (&(i, j), coeff) in &h {
            let base_wide = i as u128 * p as u128 + j as u128 * q as u128 - m_min;
            let base: u64 = base_wide
                .try_into()
                .map_err(|_| Error::Overflow("expansion exponent".into()))?;
            for t in 0..=j {
                let contribution = coeff.clone()
                    * Rational::from_bigint(binomial(j, t))
                    * c.pow((j - t) as u32);
                if contribution.is_zero() {
                    continue;
                }
                let slot = next.entry((base, t)).or_insert_with(Rational::zero);
                *slot += &contribution;
            }
        }
        next.retain(|_, v| !v.is_zero());
        debug_assert!(!next.contains_key(&(0, 0)));
        h = next;
        steps.push(Step { p, q, c });
    }
    Err(Error::IterationLimit { limit: MAX_ITER })
}

fn assemble(steps: Vec<Step>, exact: bool, transposed: bool) -> Result<BranchExpansion> {
    let overflow = || Error::Overflow("expansion order".into());
    let mut x_order = 1u64;
    for step in &steps {
        x_order = x_order.checked_mul(step.p).ok_or_else(overflow)?;
    }

    let mut pairs = Vec::new();
    let mut terms = Vec::new();
    let mut eps = Rational::zero();
    let mut running = 1u64;
    let mut n_product = 1u64;
    let order_rational = Rational::from_u64(x_order);
    for step in &steps {
        running = running.checked_mul(step.p).ok_or_else(overflow)?;
        eps += &(Rational::from_u64(step.q) * Rational::from_u64(running).recip()?);
        if step.p > 1 {
            n_product = n_product.checked_mul(step.p).ok_or_else(overflow)?;
            let m = &eps * &Rational::from_u64(n_product);
            debug_assert!(m.is_integer());
            let m = m
                .to_i64()
                .and_then(|v| u64::try_from(v).ok())
                .ok_or_else(overflow)?;
            pairs.push((m, step.p));
        }
        let exponent = &eps * &order_rational;
        debug_assert!(exponent.is_integer());
        let exponent = exponent
            .to_i64()
            .and_then(|v| u64::try_from(v).ok())
            .ok_or_else(overflow)?;
        terms.push((exponent, step.c.clone()));
    }

    Ok(BranchExpansion {
        pairs: PuiseuxPairs::new(pairs)?,
        x_order,
        terms,
        transposed,
        exact,
    })
}

/// Expands one branch of `g = 0` at the origin over the rationals,
/// returning the Puiseux pairs and the certifying parametrization.
pub fn branch_expansion(g: &BivariatePoly) -> Result<BranchExpansion> {
    if g.is_zero() {
        return Err(reducible("the zero polynomial does not define a curve germ"));
    }
    if !g.vanishes_at_origin() {
        return Err(Error::NotVanishingAtOrigin);
    }
    if g.divisible_by_x() {
        return Err(Error::AxisFactor { axis: 'x' });
    }
    if g.divisible_by_y() {
        return Err(Error::AxisFactor { axis: 'y' });
    }
    if g.multiplicity() == Some(1) {
        return Ok(BranchExpansion {
            pairs: PuiseuxPairs::smooth(),
            x_order: 1,
            terms: Vec::new(),
            transposed: false,
            exact: false,
        });
    }

    let terms = to_term_map(g);
    match expand(&terms, true)? {
        Outcome::Done { steps, exact } => assemble(steps, exact, false),
        Outcome::SwapAxes => {
            let swapped = to_term_map(&g.transpose());
            match expand(&swapped, false)? {
                Outcome::Done { steps, exact } => assemble(steps, exact, true),
                Outcome::SwapAxes => unreachable!("a second swap cannot be requested"),
            }
        }
    }
}

/// Puiseux pairs of one branch of `g = 0`, or a refusal explaining why
/// the rational iteration cannot certify them.
pub fn puiseux_pairs_lite(g: &BivariatePoly) -> Result<PuiseuxPairs> {
    Ok(branch_expansion(g)?.pairs().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_polynomial;

    fn pairs_of(src: &str) -> Result<Vec<(u64, u64)>> {
        puiseux_pairs_lite(&parse_polynomial(src).unwrap()).map(|p| p.pairs().to_vec())
    }

    #[test]
    fn cusp_expansion_is_exact() {
        let g = parse_polynomial("y^2 - x^3").unwrap();
        let exp = branch_expansion(&g).unwrap();
        assert_eq!(exp.pairs().pairs(), &[(3, 2)]);
        assert_eq!(exp.x_order(), 2);
        assert_eq!(exp.terms(), &[(3, Rational::one())]);
        assert!(exp.is_exact());
        assert!(!exp.is_transposed());
        assert!(exp.residual(&g).unwrap().is_empty());
    }

    #[test]
    fn steep_branches_swap_axes() {
        let g = parse_polynomial("x^2 - y^3").unwrap();
        let exp = branch_expansion(&g).unwrap();
        assert_eq!(exp.pairs().pairs(), &[(3, 2)]);
        assert!(exp.is_transposed());
        assert!(exp.residual(&g).unwrap().is_empty());
    }

    #[test]
    fn quartic_with_two_pairs() {
        let g = parse_polynomial("y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7").unwrap();
        let exp = branch_expansion(&g).unwrap();
        assert_eq!(exp.pairs().pairs(), &[(3, 2), (7, 2)]);
        assert_eq!(exp.x_order(), 4);
        assert_eq!(
            exp.terms(),
            &[(6, Rational::one()), (7, Rational::one())]
        );
        assert!(exp.is_exact());
        assert!(exp.residual(&g).unwrap().is_empty());
    }

    #[test]
    fn field_extensions_are_refused_with_guidance() {
        let err = pairs_of("x^6 + 2*x^3*y^2 + y^4 + x^5*y").unwrap_err();
        let Error::FieldExtensionRequired { .. } = err else {
            panic!("expected a field extension refusal, got {err:?}");
        };
        assert!(err.to_string().contains("--pairs"));
        assert!(err.to_string().contains("--graph"));

        assert!(matches!(
            pairs_of("y^2 - 2*x^3"),
            Err(Error::FieldExtensionRequired { .. })
        ));
    }

    #[test]
    fn reducible_germs_are_refused() {
        assert!(matches!(
            pairs_of("y^2 - x^2 - x^3"),
            Err(Error::ReducibleCurve { .. })
        ));
        assert!(matches!(
            pairs_of("y^4 - 2*x^6"),
            Err(Error::ReducibleCurve { .. })
        ));
    }

    #[test]
    fn smooth_branches_have_no_pairs() {
        let g = parse_polynomial("y - x^2").unwrap();
        let exp = branch_expansion(&g).unwrap();
        assert!(exp.pairs().is_empty());
        assert!(!exp.is_exact());
    }

    #[test]
    fn non_reduced_branch_still_expands() {
        assert_eq!(pairs_of("y^4 - 2*x^3*y^2 + x^6").unwrap(), vec![(3, 2)]);
    }

    #[test]
    fn rational_coefficient_steps() {
        assert_eq!(
            pairs_of("y^2 - 2*x^2*y + x^4 - x^5").unwrap(),
            vec![(5, 2)]
        );
    }

    #[test]
    fn preconditions_are_enforced() {
        assert_eq!(
            pairs_of("y^2 - x^3 + 1").unwrap_err(),
            Error::NotVanishingAtOrigin
        );
        assert_eq!(
            pairs_of("x*y - x^2").unwrap_err(),
            Error::AxisFactor { axis: 'x' }
        );
        assert_eq!(
            pairs_of("y*x^2 - y^2").unwrap_err(),
            Error::AxisFactor { axis: 'y' }
        );
    }

    #[test]
    fn guiding_example_expands_exactly() {
        let src = "x^15 - 21*x^14 + 8*x^13*y - 6*x^13 - 16*x^12*y + 20*x^11*y^2 - x^12 \
                   + 8*x^11*y - 36*x^10*y^2 + 24*x^9*y^3 + 4*x^9*y^2 - 16*x^8*y^3 \
                   + 26*x^7*y^4 - 6*x^6*y^4 + 8*x^5*y^5 + 4*x^3*y^6 - y^8";
        let g = parse_polynomial(src).unwrap();
        assert_eq!(g.num_terms(), 17);
        let exp = branch_expansion(&g).unwrap();
        assert_eq!(exp.pairs().pairs(), &[(3, 2), (7, 2), (15, 2)]);
        assert_eq!(exp.x_order(), 8);
        assert!(exp.is_exact());
        assert!(exp.residual(&g).unwrap().is_empty());
    }

    #[test]
    fn rational_root_extraction() {
        let r = |n: i64, d: i64| Rational::new(n, d).unwrap();
        assert_eq!(rational_root(&r(8, 27), 3), Some(r(2, 3)));
        assert_eq!(rational_root(&r(-8, 27), 3), Some(r(-2, 3)));
        assert_eq!(rational_root(&r(4, 9), 2), Some(r(2, 3)));
        assert_eq!(rational_root(&r(-4, 9), 2), None);
        assert_eq!(rational_root(&r(2, 1), 2), None);
        assert_eq!(rational_root(&r(7, 5), 1), Some(r(7, 5)));
    }
}
