use std::collections::BTreeMap;

use super::{Env, Field, Monomial, Poly, Var};
use crate::error::Result;

/// A polynomial in the `x` variables with coefficients in `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct XPoly<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Default for XPoly<F> {
    fn default() -> Self {
        XPoly { terms: BTreeMap::new() }
    }
}

impl<F: Field> XPoly<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: F) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    /// Splits each term of `p` into its `x` part and the rest, evaluating the
    /// rest in `F`.
    pub fn from_poly(p: &Poly, env: &Env<F>) -> Result<Self> {
        let mut grouped: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in p.terms() {
            let (xs, rest) = m.split(|v| matches!(v, Var::X(_)));
            grouped.entry(xs).or_default().add_term(rest, c.clone());
        }
        let mut out = Self::zero();
        for (xs, coeff) in grouped {
            out.add_term(xs, env.eval(&coeff, &[])?);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&m) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&F::one().neg()))
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m.mul(m2), c.mul(c2));
            }
        }
        out
    }

    /// The least total degree of a term.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }
}
