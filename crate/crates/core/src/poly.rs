//! Sparse bivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Polynomial in `x` and `y` with exact rational coefficients.
///
/// Terms are stored sparsely, keyed by the exponent pair `(i, j)` of
/// `x^i * y^j`. Zero coefficients are never stored, so structural equality
/// is semantic equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    /// Builds a polynomial from `((i, j), coefficient)` entries, summing
    /// duplicates and dropping terms that cancel to zero.
    pub fn from_terms(iter: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut terms: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (key, coeff) in iter {
            let slot = terms.entry(key).or_insert_with(Rational::zero);
            *slot += &coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    /// Coefficient of `x^i * y^j` (zero when the term is absent).
    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Order of vanishing at the origin: the minimum total degree of a term.
    /// `None` for the zero polynomial.
    pub fn multiplicity(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    pub fn vanishes_at_origin(&self) -> bool {
        !self.terms.contains_key(&(0, 0))
    }

    pub fn divisible_by_x(&self) -> bool {
        !self.is_zero() && self.terms.keys().all(|&(i, _)| i > 0)
    }

    pub fn divisible_by_y(&self) -> bool {
        !self.is_zero() && self.terms.keys().all(|&(_, j)| j > 0)
    }

    /// Swaps the roles of `x` and `y`.
    pub fn transpose(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(&k, c)| (k, c.clone())),
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Product, rejecting exponent overflow.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let mut acc: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                let i = i1
                    .checked_add(i2)
                    .ok_or_else(|| Error::Overflow("polynomial exponent".into()))?;
                let j = j1
                    .checked_add(j2)
                    .ok_or_else(|| Error::Overflow("polynomial exponent".into()))?;
                let slot = acc.entry((i, j)).or_insert_with(Rational::zero);
                *slot += &(c1 * c2);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Self { terms: acc })
    }

    /// Power by repeated squaring, rejecting exponent overflow.
    pub fn try_pow(&self, exp: u32) -> Result<Self> {
        let mut result = Self::constant(Rational::one());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Evaluates the polynomial along the parametrization
    /// `x = t^x_order`, `y = sum of c * t^e` over `y_terms`, returning the
    /// resulting series in `t` as sorted `(exponent, coefficient)` pairs.
    /// An empty result means the parametrization lies on the curve.
    pub fn eval_parametrization(
        &self,
        x_order: u64,
        y_terms: &[(u64, Rational)],
    ) -> Result<Vec<(u64, Rational)>> {
        let overflow = || Error::Overflow("parametrization exponent".into());
        let max_j = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0);

        let mut y_powers: Vec<BTreeMap<u64, Rational>> = Vec::with_capacity(max_j as usize + 1);
        let mut one = BTreeMap::new();
        one.insert(0u64, Rational::one());
        y_powers.push(one);
        let y_series: BTreeMap<u64, Rational> = y_terms.iter().cloned().collect();
        for _ in 0..max_j {
            let prev = y_powers.last().expect("power table is never empty");
            let mut next: BTreeMap<u64, Rational> = BTreeMap::new();
            for (&e1, c1) in prev {
                for (&e2, c2) in &y_series {
                    let e = e1.checked_add(e2).ok_or_else(overflow)?;
                    let slot = next.entry(e).or_insert_with(Rational::zero);
                    *slot += &(c1 * c2);
                }
            }
            next.retain(|_, c| !c.is_zero());
            y_powers.push(next);
        }

        let mut acc: BTreeMap<u64, Rational> = BTreeMap::new();
        for (&(i, j), coeff) in &self.terms {
            let x_part = (i as u64).checked_mul(x_order).ok_or_else(overflow)?;
            for (&e, c) in &y_powers[j as usize] {
                let t = x_part.checked_add(e).ok_or_else(overflow)?;
                let slot = acc.entry(t).or_insert_with(Rational::zero);
                *slot += &(coeff * c);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(acc.into_iter().collect())
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<(u32, u32)> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, i)));
        for (idx, &(i, j)) in keys.iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let has_vars = i > 0 || j > 0;
            let unit = mag == Rational::one();
            if !unit || !has_vars {
                write!(f, "{mag}")?;
                if has_vars {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
            if i > 0 && j > 0 {
                write!(f, "*")?;
            }
            match j {
                0 => {}
                1 => write!(f, "y")?,
                _ => write!(f, "y^{j}")?,
            }
        }
        Ok(())
    }
}
