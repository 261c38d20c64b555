use std::fmt;

use num_traits::{One, Zero};

use super::{RatFunc, Rational, Var};
use crate::error::{Error, Result};

/// Coefficient field shared by the symbolic and specialized computations.
///
/// `Rational` is the specialized mode, where every parameter has a numeric
/// value; `RatFunc` is the symbolic mode, where unassigned parameters stay as
/// indeterminates.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(c: Rational) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn checked_div(&self, other: &Self) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn to_ratfunc(&self) -> RatFunc;

    /// The variable itself, if the field can hold indeterminates.
    fn indeterminate(v: Var) -> Option<Self>;

    fn from_int(c: i64) -> Self {
        Self::from_rational(Rational::from_integer(c.into()))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(c: Rational) -> Self {
        c
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn checked_div(&self, other: &Self) -> Result<Self> {
        if Zero::is_zero(other) {
            Err(Error::ZeroDenominator)
        } else {
            Ok(self / other)
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_ratfunc(&self) -> RatFunc {
        RatFunc::from_rational(self.clone())
    }
    fn indeterminate(_: Var) -> Option<Self> {
        None
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn from_rational(c: Rational) -> Self {
        RatFunc::from_rational(c)
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFunc::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn checked_div(&self, other: &Self) -> Result<Self> {
        RatFunc::checked_div(self, other)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn to_ratfunc(&self) -> RatFunc {
        self.clone()
    }
    fn indeterminate(v: Var) -> Option<Self> {
        Some(RatFunc::var(v))
    }
}
