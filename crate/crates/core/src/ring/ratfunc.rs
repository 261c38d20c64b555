use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{Poly, Rational, Var};
use crate::error::{Error, Result};

/// A quotient of polynomials with the denominator kept as a product of
/// normalized factors.
///
/// Each factor is scaled so its leading coefficient is 1 and any scalar is
/// absorbed into the numerator. After every operation the numerator is trial
/// divided by each factor, which removes the common factors that arise in
/// practice without computing a gcd. Equality is decided by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: BTreeMap<Poly, u32>,
}

impl RatFunc {
    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFunc { num, den: BTreeMap::new() }
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(Poly::int(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    /// `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        Self::from_poly(num).checked_div(&Self::from_poly(den))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.den.iter().map(|(p, &e)| (p, e))
    }

    pub fn denominator(&self) -> Poly {
        expand(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        self.as_poly().and_then(Poly::constant_value)
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (lcm, fa, fb) = lcm_cofactors(&self.den, &other.den);
        let num = &self.num * &expand(&fa) + &other.num * &expand(&fb);
        RatFunc { num, den: lcm }.cancelled()
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        let mut den = self.den.clone();
        for (f, e) in &other.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        RatFunc { num: &self.num * &other.num, den }.cancelled()
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::one().checked_div(self)
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut out = RatFunc { num: &self.num * &expand(&other.den), den: self.den.clone() };
        if let Some(c) = other.num.constant_value() {
            out.num = out.num.scale(&c.recip());
        } else {
            out.push_factor(other.num.clone());
        }
        Ok(out.cancelled())
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        let mut acc = RatFunc::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// `p ⊕ q = p + q + βpq`.
    pub fn oplus(&self, other: &RatFunc) -> RatFunc {
        self.add(other).add(&RatFunc::var(Var::Beta).mul(&self.mul(other)))
    }

    /// `⊖p = -p / (1 + βp)`.
    pub fn ominus(&self) -> Result<RatFunc> {
        let den = RatFunc::one().add(&RatFunc::var(Var::Beta).mul(self));
        self.neg().checked_div(&den)
    }

    pub fn substitute(&self, sigma: &BTreeMap<Var, RatFunc>) -> Result<RatFunc> {
        let num = self.num.substitute(sigma)?;
        let mut den = RatFunc::one();
        for (f, e) in &self.den {
            den = den.mul(&f.substitute(sigma)?.pow(*e));
        }
        num.checked_div(&den)
    }

    /// Evaluates at rational values; fails with `ZeroDenominator` at a pole.
    pub fn eval_rational(&self, value: impl Fn(Var) -> Result<Rational>) -> Result<Rational> {
        let n: Rational = self.num.eval(&value)?;
        let mut d = Rational::one();
        for (f, e) in &self.den {
            let fv: Rational = f.eval(&value)?;
            d *= num_traits::pow(fv, *e as usize);
        }
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(n / d)
    }

    fn push_factor(&mut self, mut g: Poly) {
        let keys: Vec<Poly> = self.den.keys().cloned().collect();
        for f in keys {
            while let Some(q) = g.exact_div(&f) {
                *self.den.get_mut(&f).unwrap() += 1;
                g = q;
                if g.constant_value().is_some() {
                    break;
                }
            }
        }
        if let Some(c) = g.constant_value() {
            self.num = self.num.scale(&c.recip());
            return;
        }
        let lc = g.leading().map(|(_, c)| c.clone()).unwrap();
        self.num = self.num.scale(&lc.recip());
        *self.den.entry(g.scale(&lc.recip())).or_insert(0) += 1;
    }

    fn cancelled(mut self) -> RatFunc {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let keys: Vec<Poly> = self.den.keys().cloned().collect();
        for f in keys {
            let e = self.den.get_mut(&f).unwrap();
            while *e > 0 {
                match self.num.exact_div(&f) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
            if *e == 0 {
                self.den.remove(&f);
            }
        }
        self
    }
}

fn expand(den: &BTreeMap<Poly, u32>) -> Poly {
    let mut acc = Poly::one();
    for (f, e) in den {
        acc = &acc * &f.pow(*e);
    }
    acc
}

type Factors = BTreeMap<Poly, u32>;

/// The lcm of two factored denominators and the cofactors `lcm / a`, `lcm / b`.
fn lcm_cofactors(a: &Factors, b: &Factors) -> (Factors, Factors, Factors) {
    let mut lcm = a.clone();
    for (f, &e) in b {
        let x = lcm.entry(f.clone()).or_insert(0);
        *x = (*x).max(e);
    }
    let cof = |d: &Factors| -> Factors {
        lcm.iter()
            .filter_map(|(f, &e)| {
                let r = e - d.get(f).copied().unwrap_or(0);
                (r > 0).then(|| (f.clone(), r))
            })
            .collect()
    };
    let (fa, fb) = (cof(a), cof(b));
    (lcm, fa, fb)
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let (_, fa, fb) = lcm_cofactors(&self.den, &other.den);
        &self.num * &expand(&fa) == &other.num * &expand(&fb)
    }
}

impl Eq for RatFunc {}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        Self::from_rational(c)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        f.write_str(" / ")?;
        let many = self.den.len() > 1;
        if many {
            f.write_str("(")?;
        }
        for (k, (p, e)) in self.den.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if p.len() > 1 {
                write!(f, "({p})")?;
            } else {
                write!(f, "{p}")?;
            }
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if many {
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::q;

    fn v(x: Var) -> RatFunc {
        RatFunc::var(x)
    }

    #[test]
    fn oplus_examples() {
        let x1 = v(Var::X(1));
        let a1 = v(Var::A(1));
        let expect = Poly::x(1) + Poly::a(1) + Poly::beta() * Poly::x(1) * Poly::a(1);
        assert_eq!(x1.oplus(&a1), RatFunc::from_poly(expect));
        assert_eq!(x1.oplus(&RatFunc::zero()), x1);
        assert!(x1.oplus(&x1.ominus().unwrap()).is_zero());
    }

    #[test]
    fn ominus_examples() {
        assert!(RatFunc::zero().ominus().unwrap().is_zero());
        let a2 = v(Var::A(2));
        let expect = RatFunc::new(-Poly::a(2), Poly::one() + Poly::beta() * Poly::a(2)).unwrap();
        assert_eq!(a2.ominus().unwrap(), expect);
        assert_eq!(a2.ominus().unwrap().ominus().unwrap(), a2);
        let minus_inv_beta = RatFunc::new(Poly::int(-1), Poly::beta()).unwrap();
        assert_eq!(minus_inv_beta.ominus(), Err(Error::ZeroDenominator));
    }

    #[test]
    fn substitution_hits_the_inverse() {
        let g = v(Var::X(1)).oplus(&v(Var::A(1)));
        let mut s = BTreeMap::new();
        s.insert(Var::X(1), v(Var::A(1)).ominus().unwrap());
        assert!(g.substitute(&s).unwrap().is_zero());
        s.insert(Var::X(1), v(Var::A(2)).ominus().unwrap());
        let expect = RatFunc::new(Poly::a(1) - Poly::a(2), Poly::one() + Poly::beta() * Poly::a(2)).unwrap();
        assert_eq!(g.substitute(&s).unwrap(), expect);
    }

    #[test]
    fn cancellation_keeps_results_polynomial() {
        let p = Poly::one() + Poly::beta() * Poly::a(1);
        let r = RatFunc::new(&p * &Poly::x(1), p.clone()).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r, v(Var::X(1)));
        let s = RatFunc::new(Poly::one(), p.clone()).unwrap();
        let t = s.add(&s).mul(&RatFunc::from_poly(p.scale(&q(3))));
        assert_eq!(t.constant_value(), Some(q(6)));
    }

    #[test]
    fn display() {
        let r = RatFunc::new(Poly::a(1) - Poly::a(2), Poly::one() + Poly::beta() * Poly::a(2)).unwrap();
        assert_eq!(r.to_string(), "(a1 - a2) / (1 + b*a2)");
    }
}
