use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{fmt_rational, parse_rational, Monomial, RatFunc, Rational, Var};
use crate::error::{Error, ParseError, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in the canonical monomial order and no zero coefficient is
/// ever stored, so derived equality is equality of polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), Rational::one())
    }

    pub fn beta() -> Self {
        Self::var(Var::Beta)
    }

    pub fn x(i: u32) -> Self {
        Self::var(Var::X(i))
    }

    pub fn y(i: u32) -> Self {
        Self::var(Var::Y(i))
    }

    pub fn a(i: i32) -> Self {
        Self::var(Var::A(i))
    }

    pub fn b(i: i32) -> Self {
        Self::var(Var::B(i))
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The greatest term in the canonical order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars().collect::<Vec<_>>()).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &Poly, m: &Monomial, c: &Rational) {
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), oc * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        let mut out = Poly::zero();
        out.add_scaled(self, m, c);
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `p ⊕ q = p + q + βpq`.
    pub fn oplus(&self, other: &Poly) -> Poly {
        let prod = self * other;
        let mut out = self + other;
        out.add_scaled(&prod, &Monomial::var(Var::Beta), &Rational::one());
        out
    }

    /// `self / divisor` when the division is exact in the polynomial ring.
    ///
    /// Runs the division algorithm with respect to the canonical monomial
    /// order; with a single divisor the remainder is zero iff the divisor
    /// divides, so the first non-divisible leading term proves non-divisibility.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (dm, dc) = divisor.leading()?;
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        if self.degree() < divisor.degree() && !self.is_zero() {
            return None;
        }
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        let neg_divisor = -divisor;
        while let Some((lm, lc)) = rem.leading() {
            let qm = lm.checked_div(&dm)?;
            let qc = lc / &dc;
            rem.add_scaled(&neg_divisor, &qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Exact quotient by `x_i - x_{i+1}`.
    pub fn exact_div_by_linear(&self, i: u32) -> Result<Poly> {
        let d = Poly::x(i) - Poly::x(i + 1);
        self.exact_div(&d).ok_or(Error::NotDivisible)
    }

    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.rename(&f), c.clone());
        }
        out
    }

    /// Exchanges `x_i` and `x_{i+1}`.
    pub fn swap_x(&self, i: u32) -> Poly {
        self.rename(|v| match v {
            Var::X(j) if j == i => Var::X(i + 1),
            Var::X(j) if j == i + 1 => Var::X(i),
            other => other,
        })
    }

    /// Replaces every variable for which `value` returns a number, keeping the rest.
    pub fn specialize(&self, value: impl Fn(Var) -> Option<Rational>) -> Poly {
        let mut cache: BTreeMap<(Var, u32), Rational> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut kept = Vec::new();
            for (v, e) in m.iter() {
                match value(v) {
                    Some(x) => {
                        let p = cache.entry((v, e)).or_insert_with(|| num_traits::pow(x, e as usize));
                        coeff *= &*p;
                    }
                    None => kept.push((v, e)),
                }
                if coeff.is_zero() {
                    break;
                }
            }
            out.add_term(Monomial::from_pairs(kept), coeff);
        }
        out
    }

    /// Evaluates the polynomial in a field, every variable being mapped by `value`.
    pub fn eval<F: super::Field>(&self, value: impl Fn(Var) -> Result<F>) -> Result<F> {
        let mut powers: BTreeMap<Var, Vec<F>> = BTreeMap::new();
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut term = F::from_rational(c.clone());
            for (v, e) in m.iter() {
                let table = match powers.entry(v) {
                    Entry::Occupied(o) => o.into_mut(),
                    Entry::Vacant(slot) => slot.insert(vec![F::one(), value(v)?]),
                };
                while table.len() <= e as usize {
                    let next = table.last().unwrap().mul(&table[1]);
                    table.push(next);
                }
                term = term.mul(&table[e as usize]);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Image under the ring homomorphism sending each variable in `sigma` to
    /// its value; variables not in `sigma` are left in place.
    pub fn substitute(&self, sigma: &BTreeMap<Var, RatFunc>) -> Result<RatFunc> {
        self.eval(|v| Ok(sigma.get(&v).cloned().unwrap_or_else(|| RatFunc::var(v))))
    }

    /// The distinct weighted degrees of the terms.
    pub fn weighted_degrees(&self, weight: impl Fn(Var) -> i64) -> BTreeSet<i64> {
        self.terms.keys().map(|m| m.iter().map(|(v, e)| weight(v) * e as i64).sum()).collect()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(PolyJson::from(self)).expect("polynomial json")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("polynomial json")
    }

    pub fn from_json(s: &str) -> Result<Poly, ParseError> {
        let pj: PolyJson = serde_json::from_str(s).map_err(|e| ParseError::Json(e.to_string()))?;
        pj.try_into()
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Poly, ParseError> {
        let pj: PolyJson = serde_json::from_value(v).map_err(|e| ParseError::Json(e.to_string()))?;
        pj.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    exps: BTreeMap<String, u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> Self {
        let terms = p
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                coeff: format!("{}/{}", c.numer(), c.denom()),
                exps: m.iter().map(|(v, e)| (v.to_string(), e)).collect(),
            })
            .collect();
        PolyJson { terms }
    }
}

impl TryFrom<PolyJson> for Poly {
    type Error = ParseError;

    fn try_from(pj: PolyJson) -> Result<Self, ParseError> {
        let mut p = Poly::zero();
        for t in pj.terms {
            let c = parse_rational(&t.coeff)?;
            let mut pairs = Vec::new();
            for (name, e) in t.exps {
                pairs.push((name.parse::<Var>()?, e));
            }
            p.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                f.write_str(&fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let (small, big) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = Poly::zero();
        for (m, c) in &small.terms {
            out.add_scaled(big, m, c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        *self += &rhs;
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc = Poly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc = Poly::one();
        for p in iter {
            acc = &acc * &p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::q;

    fn pi2() -> Poly {
        (Poly::one() + Poly::beta() * Poly::x(1)) * (Poly::one() + Poly::beta() * Poly::x(2))
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(Poly::x(1) * Poly::x(1), Poly::monomial(Monomial::power(Var::X(1), 2), q(1)));
        let p = Poly::x(1) - Poly::a(-1);
        assert_eq!(&p + &Poly::zero(), p);
        assert_eq!(pi2().to_string(), "1 + b*x1 + b*x2 + b^2*x1*x2");
    }

    #[test]
    fn printing() {
        let g1 = Poly::x(1) + Poly::x(2) + Poly::beta() * Poly::x(1) * Poly::x(2);
        assert_eq!(g1.to_string(), "x1 + x2 + b*x1*x2");
        let p = Poly::a(-1).scale(&q(-3)) + Poly::constant(Rational::new(1.into(), 2.into()));
        assert_eq!(p.to_string(), "1/2 - 3*a[-1]");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn linear_division() {
        let d = Poly::x(1) - Poly::x(2);
        assert_eq!(d.exact_div_by_linear(1).unwrap(), Poly::one());
        let sq = Poly::x(1) * Poly::x(1) - Poly::x(2) * Poly::x(2);
        assert_eq!(sq.exact_div_by_linear(1).unwrap(), Poly::x(1) + Poly::x(2));
        assert_eq!(Poly::x(1).exact_div_by_linear(1), Err(Error::NotDivisible));
    }

    #[test]
    fn substitution() {
        let mut s = BTreeMap::new();
        s.insert(Var::X(1), RatFunc::from_int(1));
        s.insert(Var::X(2), RatFunc::from_int(1));
        s.insert(Var::Beta, RatFunc::from_int(1));
        assert_eq!(pi2().substitute(&s).unwrap(), RatFunc::from_int(4));
    }

    #[test]
    fn json_roundtrip() {
        let p = pi2() - Poly::a(-2).scale(&Rational::new(3.into(), 7.into()));
        let s = p.to_json();
        assert!(s.contains("\"coeff\":\"1/1\""));
        assert_eq!(Poly::from_json(&s).unwrap(), p);
    }
}
