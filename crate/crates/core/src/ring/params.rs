use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{fmt_rational, Poly, Rational, Var};
use crate::error::{Error, Result};

/// How one of the parameter sequences `a` or `b` is treated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Symbolic,
    Zero,
    Values(BTreeMap<i32, Rational>),
}

impl FamilySpec {
    fn value(&self, i: i32) -> Option<Rational> {
        match self {
            FamilySpec::Symbolic => None,
            FamilySpec::Zero => Some(Rational::zero()),
            FamilySpec::Values(m) => m.get(&i).cloned(),
        }
    }
}

/// Values of the parameters `β`, `a_k`, `b_k`; an unassigned parameter stays
/// an indeterminate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub beta: Option<Rational>,
    pub a: FamilySpec,
    pub b: FamilySpec,
}

/// Which families a random assignment fills in; the others are set to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub a: bool,
    pub b: bool,
}

/// Indices covered by random assignments.
pub const RANDOM_INDICES: std::ops::RangeInclusive<i32> = -24..=40;

impl Params {
    /// Everything symbolic.
    pub fn symbolic() -> Self {
        Params { beta: None, a: FamilySpec::Symbolic, b: FamilySpec::Symbolic }
    }

    /// Symbolic `β` with `a = b = 0`.
    pub fn ordinary() -> Self {
        Params { beta: None, a: FamilySpec::Zero, b: FamilySpec::Zero }
    }

    pub fn with_beta(mut self, beta: Option<Rational>) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_a(mut self, a: FamilySpec) -> Self {
        self.a = a;
        self
    }

    pub fn with_b(mut self, b: FamilySpec) -> Self {
        self.b = b;
        self
    }

    /// True when no parameter is left symbolic.
    pub fn is_specialized(&self) -> bool {
        self.beta.is_some() && !matches!(self.a, FamilySpec::Symbolic) && !matches!(self.b, FamilySpec::Symbolic)
    }

    /// Numeric value of a parameter, or `None` if it is symbolic (or not a parameter).
    pub fn value(&self, v: Var) -> Option<Rational> {
        match v {
            Var::Beta => self.beta.clone(),
            Var::A(i) => self.a.value(i),
            Var::B(i) => self.b.value(i),
            Var::X(_) | Var::Y(_) => None,
        }
    }

    /// A parameter as an element of `F`.
    pub fn lift<F: super::Field>(&self, v: Var) -> Result<F> {
        match self.value(v) {
            Some(c) => Ok(F::from_rational(c)),
            None => F::indeterminate(v).ok_or(Error::Unassigned(v)),
        }
    }

    /// A parameter as a polynomial: a constant if assigned, the variable otherwise.
    pub fn poly(&self, v: Var) -> Poly {
        match self.value(v) {
            Some(c) => Poly::constant(c),
            None => Poly::var(v),
        }
    }

    /// Substitutes every assigned parameter.
    pub fn specialize(&self, p: &Poly) -> Poly {
        p.specialize(|v| self.value(v))
    }

    /// Evaluates `p` in `F`, with `x_i ↦ x(i)` and parameters lifted.
    pub fn eval<F: super::Field>(&self, p: &Poly, x: impl Fn(u32) -> Result<F>) -> Result<F> {
        p.eval(|v| match v {
            Var::X(i) => x(i),
            other => self.lift(other),
        })
    }

    /// A random assignment drawn deterministically from `seed`.
    ///
    /// Numerators and denominators lie in `[-99, 99]`; `β ≠ 0`, every
    /// `1 + βa_k` and `1 + βb_k` is nonzero and the `a_k` are distinct.
    pub fn random(seed: u64, spec: RandomSpec) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            if let Some(p) = Self::draw(&mut rng, spec) {
                return p;
            }
        }
    }

    /// Like [`Params::random`], redrawing until `check` accepts the assignment.
    ///
    /// `check` should return `DegenerateAssignment` for inadmissible draws; any
    /// other error is passed through.
    pub fn random_admissible(seed: u64, spec: RandomSpec, check: impl Fn(&Params) -> Result<()>) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..1000 {
            let Some(p) = Self::draw(&mut rng, spec) else { continue };
            match check(&p) {
                Ok(()) => return Ok(p),
                Err(Error::DegenerateAssignment(_)) | Err(Error::ZeroDenominator) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::DegenerateAssignment(format!("no admissible draw from seed {seed}")))
    }

    fn draw(rng: &mut ChaCha8Rng, spec: RandomSpec) -> Option<Self> {
        let mut rat = |nonzero: bool| loop {
            let n: i64 = rng.random_range(-99..=99);
            let d: i64 = rng.random_range(1..=99);
            if !nonzero || n != 0 {
                return Rational::new(n.into(), d.into());
            }
        };
        let beta = rat(true);
        let mut family = |on: bool, distinct: bool| -> Option<FamilySpec> {
            if !on {
                return Some(FamilySpec::Zero);
            }
            let mut m = BTreeMap::new();
            for i in RANDOM_INDICES {
                let v = rat(false);
                if (Rational::one() + &beta * &v).is_zero() {
                    return None;
                }
                if distinct && m.values().any(|w| *w == v) {
                    return None;
                }
                m.insert(i, v);
            }
            Some(FamilySpec::Values(m))
        };
        let a = family(spec.a, true)?;
        let b = family(spec.b, false)?;
        Some(Params { beta: Some(beta), a, b })
    }

    /// Derived seed for the `k`-th of several independent assignments.
    pub fn derive_seed(seed: u64, k: u64) -> u64 {
        seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k.wrapping_mul(0xD1B5_4A32_D192_ED03)) ^ k
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn family(f: &mut fmt::Formatter<'_>, name: char, s: &FamilySpec) -> fmt::Result {
            match s {
                FamilySpec::Symbolic => write!(f, "{name}=symbolic"),
                FamilySpec::Zero => write!(f, "{name}=0"),
                FamilySpec::Values(m) => {
                    write!(f, "{name}=[")?;
                    for (k, (i, v)) in m.iter().enumerate() {
                        if k > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{i}:{}", fmt_rational(v))?;
                    }
                    f.write_str("]")
                }
            }
        }
        match &self.beta {
            Some(b) => write!(f, "b={}; ", fmt_rational(b))?,
            None => f.write_str("b=symbolic; ")?,
        }
        family(f, 'a', &self.a)?;
        f.write_str("; ")?;
        family(f, 'b', &self.b)
    }
}
