//! Exact arithmetic: rationals, sparse polynomials and rational functions.

mod env;
mod field;
mod monomial;
mod params;
mod poly;
mod ratfunc;
mod var;
mod xpoly;

pub use env::Env;
pub use field::Field;
pub use monomial::Monomial;
pub use params::{FamilySpec, Params, RandomSpec, RANDOM_INDICES};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use var::{Family, Var};
pub use xpoly::XPoly;

use crate::error::ParseError;

pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `n/d`, or just `n` for integers.
pub fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let bad = || ParseError::Rational(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
    if d == 0.into() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}
