use super::{Field, Params, Poly, Var};
use crate::error::{Error, Result};

/// Parameters lifted into a coefficient field, with the `⊕`/`⊖` group law.
#[derive(Clone, Debug)]
pub struct Env<F> {
    pub params: Params,
    pub beta: F,
    line: Option<F>,
}

impl<F: Field> Env<F> {
    pub fn new(params: &Params) -> Result<Self> {
        Ok(Env { params: params.clone(), beta: params.lift(Var::Beta)?, line: None })
    }

    /// Like [`Env::new`], but every assigned `a_k`, `b_k` is multiplied by `t`.
    pub fn on_line(params: &Params, t: F) -> Result<Self> {
        Ok(Env { line: Some(t), ..Self::new(params)? })
    }

    pub fn param(&self, v: Var) -> Result<F> {
        let x: F = self.params.lift(v)?;
        match (&self.line, v) {
            (Some(t), Var::A(_) | Var::B(_)) if self.params.value(v).is_some() => Ok(x.mul(t)),
            _ => Ok(x),
        }
    }

    pub fn a(&self, i: i32) -> Result<F> {
        self.param(Var::A(i))
    }

    pub fn b(&self, i: i32) -> Result<F> {
        self.param(Var::B(i))
    }

    /// `1 + βx`.
    pub fn one_plus_beta(&self, x: &F) -> F {
        F::one().add(&self.beta.mul(x))
    }

    /// `x + y + βxy`.
    pub fn oplus(&self, x: &F, y: &F) -> F {
        x.add(y).add(&self.beta.mul(&x.mul(y)))
    }

    /// `-x / (1 + βx)`.
    pub fn ominus(&self, x: &F) -> Result<F> {
        x.neg().checked_div(&self.one_plus_beta(x))
    }

    /// Evaluates `p` with `x_i ↦ xs[i-1]` and the parameters lifted.
    pub fn eval(&self, p: &Poly, xs: &[F]) -> Result<F> {
        p.eval(|v| match v {
            Var::X(i) => xs.get(i as usize - 1).cloned().ok_or(Error::Unassigned(v)),
            Var::Beta => Ok(self.beta.clone()),
            other => self.param(other),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{q, RatFunc, Rational};

    #[test]
    fn group_law_specialized() {
        let p = Params::ordinary().with_beta(Some(q(3)));
        let env: Env<Rational> = Env::new(&p).unwrap();
        let x = Rational::new(2.into(), 5.into());
        let y = q(-7);
        assert_eq!(env.oplus(&x, &env.ominus(&x).unwrap()), q(0));
        assert_eq!(env.oplus(&x, &y), env.oplus(&y, &x));
        let minus_third = Rational::new((-1).into(), 3.into());
        assert_eq!(env.ominus(&minus_third), Err(Error::ZeroDenominator));
    }

    #[test]
    fn symbolic_beta() {
        let env: Env<RatFunc> = Env::new(&Params::symbolic()).unwrap();
        let a = env.a(2).unwrap();
        assert_eq!(env.ominus(&a).unwrap(), a.ominus().unwrap());
        assert!(Env::<Rational>::new(&Params::symbolic()).is_err());
    }
}
