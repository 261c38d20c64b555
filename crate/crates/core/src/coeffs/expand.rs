//! Expansion of symmetric polynomials in the Grothendieck bases.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groth::{eval_point, groth_eval, groth_poly, is_symmetric, Kind};
use crate::par::Execution;
use crate::ring::{Env, Field, Params, Poly, Var, XPoly};
use crate::shapes::{partitions_in_box, Partition, SkewShape};

/// Values `G_ρ(a_μ|a)` for `ρ ⊆ μ ⊆ (k^n)`, shared by repeated expansions
/// under one assignment.
pub struct InterpolationTable<F> {
    n: u32,
    points: Vec<(Partition, Vec<F>)>,
    values: BTreeMap<(Partition, Partition), F>,
}

impl<F: Field> InterpolationTable<F> {
    pub fn new(n: u32, k: u32, env: &Env<F>) -> Result<Self> {
        let box_ = partitions_in_box(n as usize, k);
        let mut points = Vec::with_capacity(box_.len());
        let mut values = BTreeMap::new();
        for mu in &box_ {
            let point = eval_point(mu, n, env)?;
            for rho in box_.iter().filter(|r| mu.contains(r)) {
                let g = groth_eval(&SkewShape::straight(rho.clone()), Kind::FactorialA, env, &point)?;
                values.insert((rho.clone(), mu.clone()), g);
            }
            points.push((mu.clone(), point));
        }
        Ok(InterpolationTable { n, points, values })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Coefficients `d_λ` with `P = Σ d_λ G_λ(x|a)` over the box, from the
    /// values `p_at(μ, a_μ) = P(a_μ)`.
    ///
    /// Runs through the box in graded order, so every `ρ ⊊ μ` is settled
    /// before `μ`, and solves `d_μ = (P(a_μ) - Σ_{ρ⊊μ} d_ρ G_ρ(a_μ|a)) / G_μ(a_μ|a)`.
    pub fn expand(&self, p_at: impl Fn(&Partition, &[F]) -> Result<F>) -> Result<BTreeMap<Partition, F>> {
        let mut d: BTreeMap<Partition, F> = BTreeMap::new();
        for (mu, point) in &self.points {
            let mut rest = p_at(mu, point)?;
            for (rho, c) in &d {
                if rho != mu && mu.contains(rho) {
                    rest = rest.sub(&c.mul(&self.values[&(rho.clone(), mu.clone())]));
                }
            }
            if rest.is_zero() {
                continue;
            }
            let diag = &self.values[&(mu.clone(), mu.clone())];
            if diag.is_zero() {
                return Err(Error::DegenerateAssignment(format!("G_{mu}(a_{mu}|a) vanishes")));
            }
            d.insert(mu.clone(), rest.checked_div(diag)?);
        }
        Ok(d)
    }
}

/// [`InterpolationTable::expand`] with a fresh table.
pub fn expand_by_interpolation<F: Field>(
    p_at: impl Fn(&Partition, &[F]) -> Result<F>,
    n: u32,
    k: u32,
    env: &Env<F>,
) -> Result<BTreeMap<Partition, F>> {
    InterpolationTable::new(n, k, env)?.expand(p_at)
}

/// Expands a symmetric polynomial `p` (in `x_1..x_n`, parameters lifted by
/// `env`) in the basis `G_λ(x|a)`, `λ ⊆ (k^n)`.
pub fn expand_in_factorial_basis<F: Field>(p: &Poly, n: u32, k: u32, env: &Env<F>) -> Result<BTreeMap<Partition, F>> {
    if !is_symmetric(p, n) {
        return Err(Error::NotSymmetric(n as usize));
    }
    expand_by_interpolation(|_, pt| env.eval(p, pt), n, k, env)
}

/// `Σ d_λ G_λ(x|a)` as a polynomial in `x`.
pub fn reconstruct<F: Field>(d: &BTreeMap<Partition, F>, n: u32, env: &Env<F>) -> Result<XPoly<F>> {
    let mut acc = XPoly::zero();
    for (lam, c) in d {
        let g = groth_poly(
            &SkewShape::straight(lam.clone()),
            n,
            Kind::FactorialA,
            &Params::symbolic(),
            Execution::Sequential,
        );
        acc = acc.add(&XPoly::from_poly(&g, env)?.scale(c));
    }
    Ok(acc)
}

/// Expands a symmetric `p` in the ordinary basis `G_λ(x)`.
///
/// Repeatedly removes the lexicographically largest monomial `x^α` of least
/// degree with `c·G_α(x)`; the least-degree part of `G_α(x)` is the Schur
/// polynomial `s_α`, so this never divides.
pub fn expand_ordinary<F: Field>(p: &XPoly<F>, n: u32, env: &Env<F>) -> Result<BTreeMap<Partition, F>> {
    let mut rest = p.clone();
    let mut d: BTreeMap<Partition, F> = BTreeMap::new();
    let mut cache: BTreeMap<Partition, XPoly<F>> = BTreeMap::new();
    loop {
        let Some((m, c)) = rest.terms().next().map(|(m, c)| (m.clone(), c.clone())) else { break };
        let alpha: Vec<u32> = (1..=n).map(|i| m.exponent(Var::X(i))).collect();
        let lam = Partition::new(alpha).map_err(|_| Error::NotSymmetric(n as usize))?;
        if !cache.contains_key(&lam) {
            let g = groth_poly(
                &SkewShape::straight(lam.clone()),
                n,
                Kind::Ordinary,
                &Params::ordinary(),
                Execution::Sequential,
            );
            cache.insert(lam.clone(), XPoly::from_poly(&g, env)?);
        }
        rest = rest.sub(&cache[&lam].scale(&c));
        let v = d.remove(&lam).map_or(c.clone(), |old| old.add(&c));
        if !v.is_zero() {
            d.insert(lam, v);
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{q, RatFunc, Rational};

    fn sym() -> Env<RatFunc> {
        Env::new(&Params::symbolic()).unwrap()
    }

    #[test]
    fn basis_elements_expand_to_indicators() {
        let env = sym();
        for mu in partitions_in_box(2, 1) {
            let g = groth_poly(
                &SkewShape::straight(mu.clone()),
                2,
                Kind::FactorialA,
                &Params::symbolic(),
                Execution::Sequential,
            );
            let d = expand_in_factorial_basis(&g, 2, 1, &env).unwrap();
            assert_eq!(d.len(), 1);
            assert_eq!(d[&mu], RatFunc::one());
        }
        let d = expand_in_factorial_basis(&Poly::one(), 2, 2, &env).unwrap();
        assert_eq!(d.into_iter().collect::<Vec<_>>(), vec![(Partition::empty(), RatFunc::one())]);
        assert_eq!(expand_in_factorial_basis(&Poly::x(1), 2, 1, &env), Err(Error::NotSymmetric(2)));
    }

    #[test]
    fn ordinary_square_of_one_box() {
        let env = sym();
        let g1 = groth_poly(&"1".parse().unwrap(), 2, Kind::Ordinary, &Params::ordinary(), Execution::Sequential);
        let sq = XPoly::from_poly(&(&g1 * &g1), &env).unwrap();
        let d = expand_ordinary(&sq, 2, &env).unwrap();
        let b = RatFunc::var(Var::Beta);
        assert_eq!(d[&Partition::of(&[2])], RatFunc::one());
        assert_eq!(d[&Partition::of(&[1, 1])], RatFunc::one());
        assert_eq!(d[&Partition::of(&[2, 1])], b);
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn specialized_reconstruction() {
        let params = Params::random(3, crate::ring::RandomSpec { a: true, b: false });
        let env: Env<Rational> = Env::new(&params).unwrap();
        let g = groth_poly(&"1".parse().unwrap(), 2, Kind::FactorialA, &params, Execution::Sequential);
        let p = &g * &g;
        let d = expand_in_factorial_basis(&p, 2, 2, &env).unwrap();
        let back = reconstruct(&d, 2, &env).unwrap();
        assert_eq!(back, XPoly::from_poly(&p, &env).unwrap());
        assert!(d.values().all(|c| *c != q(0)));
    }
}
