//! Expansion coefficients of products of Grothendieck polynomials.

mod expand;
mod recurrence;
mod rules;

pub use expand::{
    expand_by_interpolation, expand_in_factorial_basis, expand_ordinary, reconstruct, InterpolationTable,
};
pub use recurrence::{chain_sum_solution, recurrence_coefficients, strict_tangle_chains, Evaluator, Recurrence};
pub use rules::{
    buch_product, buch_skew, buch_skew_unscaled, lattice_count, lr_combinatorial, lr_count, lr_count_naive,
    lr_witnesses, row_shape_rule,
};

use std::fmt;
use std::str::FromStr;

use std::collections::BTreeMap;

use crate::error::{Error, ParseError, Result};
use crate::groth::{eval_point, groth_eval, groth_poly, Kind};
use crate::par::Execution;
use crate::ring::{Env, Field, Params, Poly, RandomSpec, RatFunc, Rational, Var, XPoly};
use crate::shapes::{Partition, SkewShape};

/// A way of computing `g^ν_{θμ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    Comb,
    Expand,
    Recur,
    Chain,
}

impl Route {
    pub const ALL: [Route; 4] = [Route::Comb, Route::Expand, Route::Recur, Route::Chain];
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Comb => "comb",
            Route::Expand => "expand",
            Route::Recur => "recur",
            Route::Chain => "chain",
        })
    }
}

impl FromStr for Route {
    type Err = ParseError;
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        match s {
            "comb" => Ok(Route::Comb),
            "expand" => Ok(Route::Expand),
            "recur" => Ok(Route::Recur),
            "chain" => Ok(Route::Chain),
            other => Err(ParseError::Variable(format!("unknown route {other}"))),
        }
    }
}

/// The rectangle `((μ_1 + #columns of θ)^n)` holding every `ν` with `c^ν_{θμ} ≠ 0`.
pub fn nu_bound(theta: &SkewShape, mu: &Partition, n: u32) -> Partition {
    Partition::rectangle(n as usize, mu.first() + theta.column_count())
}

/// `λ ↦ G_θ(a_λ|b)`.
pub fn groth_b_evaluator<'a, F: Field>(
    theta: &'a SkewShape,
    n: u32,
    env: &'a Env<F>,
) -> impl Fn(&Partition) -> Result<F> + Sync + 'a {
    move |lam| groth_eval(theta, Kind::FactorialB, env, &eval_point(lam, n, env)?)
}

/// Checks `∏(1 + βa_{n+1-i+λ_i}) G_λ(x|a) Π(x) = Σ_{λ⇉μ} β^{|μ/λ|} G_μ(x|a)`,
/// or its ordinary counterpart `G_λ(x)Π(x) = Σ β^{|μ/λ|} G_μ(x)`, as
/// polynomial identities.
pub fn pieri_identity_check(lam: &Partition, n: u32, factorial: bool) -> bool {
    let (kind, params) =
        if factorial { (Kind::FactorialA, Params::symbolic()) } else { (Kind::Ordinary, Params::ordinary()) };
    let g = |p: &Partition| groth_poly(&SkewShape::straight(p.clone()), n, kind, &params, Execution::default());
    let pi_x: Poly = (1..=n).map(|i| Poly::one() + Poly::beta() * Poly::x(i)).product();
    let mut lhs = g(lam) * pi_x;
    if factorial {
        for i in 1..=n as usize {
            let idx = crate::groth::eval_index(lam, n, i);
            lhs = lhs * (Poly::one() + Poly::beta() * Poly::var(Var::A(idx)));
        }
    }
    let rhs: Poly = lam
        .tangle_successors(n as usize, lam.first() + 1)
        .iter()
        .map(|mu| Poly::beta().pow(mu.size() - lam.size()) * g(mu))
        .sum();
    lhs == rhs
}

/// Indeterminate standing for the line parameter `t` in [`lr_coefficient`].
const LINE: Var = Var::Y(0);

/// `c^ν_{θμ} = g^ν_{θμ}(0, 0)` by the given route, as a polynomial in `β`
/// (a constant when `beta` is given).
///
/// `Recur` and `Chain` divide by `Π(a_ν) - Π(a_μ)`, which vanishes at
/// `a = 0`; they run along the line `a_k = r_k t`, `b_k = s_k t` with `r, s`
/// drawn from `seed`, and return the limit `t → 0`.
pub fn lr_coefficient(
    route: Route,
    theta: &SkewShape,
    mu: &Partition,
    nu: &Partition,
    n: u32,
    beta: Option<&Rational>,
    seed: u64,
) -> Result<Poly> {
    let at_beta = |p: Poly| match beta {
        Some(b) => p.specialize(|v| (v == Var::Beta).then(|| b.clone())),
        None => p,
    };
    match route {
        Route::Comb => Ok(at_beta(lr_combinatorial(theta, mu, nu, n))),
        Route::Expand => {
            let params = Params::ordinary().with_beta(beta.cloned());
            let env: Env<RatFunc> = Env::new(&params)?;
            let g = |t: &SkewShape| groth_poly(t, n, Kind::Ordinary, &params, Execution::Sequential);
            let prod = XPoly::from_poly(&(g(theta) * g(&SkewShape::straight(mu.clone()))), &env)?;
            let d = expand_ordinary(&prod, n, &env)?;
            d.get(nu).map_or(Ok(Poly::zero()), ratfunc_to_poly)
        }
        Route::Recur | Route::Chain => {
            let draw = Params::random(seed, RandomSpec { a: true, b: true });
            let params = Params { beta: beta.cloned(), a: draw.a, b: draw.b };
            let env: Env<RatFunc> = Env::on_line(&params, RatFunc::var(LINE))?;
            let p_at = groth_b_evaluator(theta, n, &env);
            let g = if route == Route::Recur {
                recurrence_coefficients(&p_at, mu, nu, n, &env)?
            } else {
                chain_sum_solution(&p_at, mu, nu, n, &env)?
            };
            limit_at_zero(&g, LINE)
        }
    }
}

fn ratfunc_to_poly(f: &RatFunc) -> Result<Poly> {
    match f.as_poly() {
        Some(p) => Ok(p.clone()),
        None => f
            .numerator()
            .exact_div(&f.denominator())
            .ok_or_else(|| Error::DegenerateAssignment(format!("{f} is not a polynomial"))),
    }
}

/// The lowest power of `v` in `p` with its nonzero coefficient.
fn lowest_order(p: &Poly, v: Var) -> Option<(u32, Poly)> {
    let mut by_order: BTreeMap<u32, Poly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (vs, rest) = m.split(|w| w == v);
        by_order.entry(vs.exponent(v)).or_default().add_term(rest, c.clone());
    }
    by_order.into_iter().find(|(_, c)| !c.is_zero())
}

/// `lim_{v → 0} f` for a rational function `f` continuous at `v = 0`.
pub fn limit_at_zero(f: &RatFunc, v: Var) -> Result<Poly> {
    let Some((kn, num)) = lowest_order(f.numerator(), v) else { return Ok(Poly::zero()) };
    let (kd, den) = lowest_order(&f.denominator(), v).ok_or(Error::ZeroDenominator)?;
    if kn > kd {
        return Ok(Poly::zero());
    }
    if kn < kd {
        return Err(Error::DegenerateAssignment(format!("{f} has a pole at {v} = 0")));
    }
    ratfunc_to_poly(&RatFunc::new(num, den)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{RandomSpec, RatFunc, Rational};
    use crate::shapes::partitions_in_box;

    #[test]
    fn pieri_small() {
        assert!(pieri_identity_check(&Partition::empty(), 2, false));
        assert!(pieri_identity_check(&Partition::of(&[1]), 2, true));
        assert!(pieri_identity_check(&Partition::of(&[2, 2]), 2, false));
        assert!(pieri_identity_check(&Partition::of(&[2, 1]), 3, false));
    }

    #[test]
    fn interpolation_matches_recurrence_on_square() {
        let params = Params::random(5, RandomSpec { a: true, b: false });
        let env: Env<Rational> = Env::new(&params).unwrap();
        let one: SkewShape = "1".parse().unwrap();
        let g1 = groth_poly(&one, 2, Kind::FactorialA, &params, Execution::Sequential);
        let sq = &g1 * &g1;
        let d = expand_in_factorial_basis(&sq, 2, 2, &env).unwrap();
        let p_at = |l: &Partition| env.eval(&sq, &eval_point(l, 2, &env)?);
        for nu in partitions_in_box(2, 2) {
            let r = recurrence_coefficients(&p_at, &Partition::empty(), &nu, 2, &env).unwrap();
            assert_eq!(d.get(&nu).cloned().unwrap_or_else(Rational::zero), r, "{nu}");
        }
    }

    #[test]
    fn routes_agree_symbolic_small() {
        let env: Env<RatFunc> = Env::new(&Params::symbolic()).unwrap();
        let theta: SkewShape = "1".parse().unwrap();
        let p_at = groth_b_evaluator(&theta, 2, &env);
        for nu in partitions_in_box(2, 2) {
            let mu = Partition::of(&[1]);
            if !nu.contains(&mu) {
                continue;
            }
            let r = recurrence_coefficients(&p_at, &mu, &nu, 2, &env).unwrap();
            assert_eq!(chain_sum_solution(&p_at, &mu, &nu, 2, &env).unwrap(), r);
            assert_eq!(row_shape_rule(&theta, &mu, &nu, 2, &env).unwrap(), r, "{nu}");
        }
    }

    #[test]
    fn every_route_gives_lr_coefficient() {
        let one: SkewShape = "1".parse().unwrap();
        let mu = Partition::of(&[1]);
        for (nu, expected) in [("2", Poly::one()), ("1,1", Poly::one()), ("2,1", Poly::beta())] {
            let nu: Partition = nu.parse().unwrap();
            for route in Route::ALL {
                assert_eq!(lr_coefficient(route, &one, &mu, &nu, 2, None, 7).unwrap(), expected, "{route} {nu}");
            }
        }
        let b = Rational::new(3.into(), 7.into());
        let nu = Partition::of(&[2, 1]);
        assert_eq!(lr_coefficient(Route::Recur, &one, &mu, &nu, 3, Some(&b), 1).unwrap(), Poly::constant(b));
    }

    #[test]
    fn limit_cancels_common_vanishing() {
        let t = Var::Y(0);
        let f = RatFunc::new(Poly::var(t) * Poly::beta(), Poly::var(t) * (Poly::one() + Poly::var(t))).unwrap();
        assert_eq!(limit_at_zero(&f, t).unwrap(), Poly::beta());
        let pole = RatFunc::new(Poly::one(), Poly::var(t)).unwrap();
        assert!(limit_at_zero(&pole, t).is_err());
    }

    #[test]
    fn route_names_roundtrip() {
        for r in Route::ALL {
            assert_eq!(r.to_string().parse::<Route>().unwrap(), r);
        }
    }
}
