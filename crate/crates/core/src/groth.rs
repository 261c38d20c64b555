//! Ordinary and factorial Grothendieck polynomials as tableau sums, their
//! evaluation points and the monomial basis.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::par::Execution;
use crate::ring::{q, Env, Field, Monomial, Params, Poly, Var};
use crate::shapes::{partitions_in_box, Cell, Partition, SkewShape};
use crate::tableaux::{Mask, SvtLayout};

/// Which parameter sequence enters the cell weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Kind {
    /// Weight `x_r`.
    #[default]
    Ordinary,
    /// Weight `x_r ⊕ a_{r+c(α)}`.
    FactorialA,
    /// Weight `x_r ⊕ b_{r+c(α)}`.
    FactorialB,
}

impl Kind {
    /// The parameter `a_i` or `b_i` of this kind, `None` for the ordinary kind.
    pub fn param(self, i: i32) -> Option<Var> {
        match self {
            Kind::Ordinary => None,
            Kind::FactorialA => Some(Var::A(i)),
            Kind::FactorialB => Some(Var::B(i)),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Ordinary => "ordinary",
            Kind::FactorialA => "factorial-a",
            Kind::FactorialB => "factorial-b",
        })
    }
}

impl FromStr for Kind {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s {
            "ordinary" => Ok(Kind::Ordinary),
            "factorial-a" | "factorial" | "a" => Ok(Kind::FactorialA),
            "factorial-b" | "b" => Ok(Kind::FactorialB),
            _ => Err(ParseError::Variable(s.to_string())),
        }
    }
}

/// A Grothendieck polynomial together with what it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothPoly {
    pub shape: SkewShape,
    pub n: u32,
    pub kind: Kind,
    pub value: Poly,
}

/// `β^{|S|-1} ∏_{r∈S} w(r, α)` for every nonempty `S ⊆ [n]`, indexed by mask.
fn cell_table<T: Clone>(n: u32, one: T, beta: &T, weight: impl Fn(u32) -> T, mul: impl Fn(&T, &T) -> T) -> Vec<T> {
    let size = 1usize << n;
    let mut table = vec![one.clone(); size];
    let weights: Vec<T> = (1..=n).map(&weight).collect();
    for m in 1..size {
        let low = m.trailing_zeros() as usize;
        let rest = m & (m - 1);
        table[m] = if rest == 0 { weights[low].clone() } else { mul(&mul(&table[rest], &weights[low]), beta) };
    }
    table
}

fn weight_poly(kind: Kind, params: &Params, beta: &Poly, r: u32, cell: Cell) -> Poly {
    let x = Poly::x(r);
    match kind.param(r as i32 + cell.content()) {
        None => x,
        Some(v) => {
            let a = params.poly(v);
            let prod = &x * &a;
            &(&x + &a) + &(beta * &prod)
        }
    }
}

/// `G_θ(x)`, `G_θ(x|a)` or `G_θ(x|b)` in `n` variables, with the assigned
/// parameters of `params` substituted.
pub fn groth_poly(theta: &SkewShape, n: u32, kind: Kind, params: &Params, exec: Execution) -> Poly {
    let layout = SvtLayout::new(theta, n);
    let beta = params.poly(Var::Beta);
    let tables: Vec<Vec<Poly>> = layout
        .cells()
        .iter()
        .map(|&c| cell_table(n, Poly::one(), &beta, |r| weight_poly(kind, params, &beta, r, c), |a, b| a * b))
        .collect();
    layout.fold(
        exec,
        Poly::one(),
        |acc: &Poly, k, m: Mask| Some(acc * &tables[k][m as usize]),
        |_, acc| acc.clone(),
        Poly::zero,
        |mut a, b| {
            a += &b;
            a
        },
    )
}

/// `G_θ(x)` with `β` symbolic.
pub fn groth_ordinary(theta: &SkewShape, n: u32) -> GrothPoly {
    let value = groth_poly(theta, n, Kind::Ordinary, &Params::ordinary(), Execution::default());
    GrothPoly { shape: theta.clone(), n, kind: Kind::Ordinary, value }
}

/// `G_θ(x|a)` or `G_θ(x|b)` with every parameter symbolic.
pub fn groth_factorial(theta: &SkewShape, n: u32, kind: Kind) -> GrothPoly {
    let value = groth_poly(theta, n, kind, &Params::symbolic(), Execution::default());
    GrothPoly { shape: theta.clone(), n, kind, value }
}

/// `G_θ(x|·)` evaluated at the point `xs` directly from the tableau sum.
pub fn groth_eval<F: Field>(theta: &SkewShape, kind: Kind, env: &Env<F>, xs: &[F]) -> Result<F> {
    let n = xs.len() as u32;
    let layout = SvtLayout::new(theta, n);
    let mut tables = Vec::with_capacity(layout.cells().len());
    for &c in layout.cells() {
        let mut w = Vec::with_capacity(n as usize);
        for r in 1..=n {
            let x = &xs[r as usize - 1];
            w.push(match kind.param(r as i32 + c.content()) {
                None => x.clone(),
                Some(v) => env.oplus(x, &env.param(v)?),
            });
        }
        tables.push(cell_table(n, F::one(), &env.beta, |r| w[r as usize - 1].clone(), F::mul));
    }
    Ok(layout.fold(
        Execution::Sequential,
        F::one(),
        |acc: &F, k, m| Some(acc.mul(&tables[k][m as usize])),
        |_, acc| acc.clone(),
        F::zero,
        |a, b| a.add(&b),
    ))
}

/// The point `a_λ` with `(a_λ)_i = ⊖a_{n+1-i+λ_i}`.
pub fn eval_point<F: Field>(lam: &Partition, n: u32, env: &Env<F>) -> Result<Vec<F>> {
    check_len(lam, n)?;
    (1..=n as usize).map(|i| env.ominus(&env.a(eval_index(lam, n, i))?)).collect()
}

/// `n + 1 - i + λ_i`.
pub fn eval_index(lam: &Partition, n: u32, i: usize) -> i32 {
    n as i32 + 1 - i as i32 + lam.part(i) as i32
}

fn check_len(lam: &Partition, n: u32) -> Result<()> {
    if lam.len() > n as usize {
        return Err(Error::LengthExceedsN { len: lam.len(), n: n as usize });
    }
    Ok(())
}

/// `Π(y) = ∏ (1 + βy_i)`.
pub fn pi_product<F: Field>(ys: &[F], env: &Env<F>) -> F {
    ys.iter().fold(F::one(), |acc, y| acc.mul(&env.one_plus_beta(y)))
}

/// `Π(a_λ) = 1 / ∏ (1 + βa_{n+1-i+λ_i})`.
pub fn pi_at<F: Field>(lam: &Partition, n: u32, env: &Env<F>) -> Result<F> {
    check_len(lam, n)?;
    let mut d = F::one();
    for i in 1..=n as usize {
        d = d.mul(&env.one_plus_beta(&env.a(eval_index(lam, n, i))?));
    }
    d.recip()
}

/// `∏_{(i,j)∈λ} (a_{n+j-λ'_j} - a_{λ_i+n-i+1}) / (1 + βa_{λ_i+n-i+1})`.
pub fn closed_form_diagonal<F: Field>(lam: &Partition, n: u32, env: &Env<F>) -> Result<F> {
    check_len(lam, n)?;
    let conj = lam.conjugate();
    let mut acc = F::one();
    for c in lam.cells() {
        let (i, j) = (c.row as usize, c.col as usize);
        let top = env.a(n as i32 + j as i32 - conj.part(j) as i32)?;
        let idx = lam.part(i) as i32 + n as i32 - i as i32 + 1;
        let ai = env.a(idx)?;
        acc = acc.mul(&top.sub(&ai).checked_div(&env.one_plus_beta(&ai))?);
    }
    Ok(acc)
}

/// Outcome of evaluating `G_λ(a_μ|a)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Vanishing<F> {
    Zero,
    NonzeroDiagonal(F),
    Other(F),
}

/// Evaluates `G_λ(a_μ|a)` and classifies the value.
pub fn vanishing_check<F: Field>(lam: &Partition, mu: &Partition, n: u32, env: &Env<F>) -> Result<Vanishing<F>> {
    check_len(lam, n)?;
    let point = eval_point(mu, n, env)?;
    let v = groth_eval(&SkewShape::straight(lam.clone()), Kind::FactorialA, env, &point)?;
    Ok(if v.is_zero() {
        Vanishing::Zero
    } else if lam == mu {
        Vanishing::NonzeroDiagonal(v)
    } else {
        Vanishing::Other(v)
    })
}

/// The monomial `x^α`.
pub fn x_monomial(alpha: &[u32]) -> Monomial {
    Monomial::from_pairs(alpha.iter().enumerate().map(|(i, &e)| (Var::X(i as u32 + 1), e)))
}

/// All distinct rearrangements of `parts` padded to length `n`.
fn rearrangements(parts: &[u32], n: usize) -> Vec<Vec<u32>> {
    let mut v: Vec<u32> = parts.to_vec();
    v.resize(n, 0);
    v.sort_unstable();
    let mut out = vec![v.clone()];
    // next lexicographic permutation
    while let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) {
        let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(v.clone());
    }
    out
}

/// `m_λ(x_1, …, x_n)`.
pub fn monomial_symmetric(lam: &Partition, n: u32) -> Poly {
    if lam.len() > n as usize {
        return Poly::zero();
    }
    Poly::from_terms(rearrangements(lam.parts(), n as usize).iter().map(|a| (x_monomial(a), q(1))))
}

/// `e_k(x_1, …, x_n)`.
pub fn elementary(k: u32, n: u32) -> Poly {
    monomial_symmetric(&Partition::new(vec![1; k as usize]).unwrap(), n)
}

/// Whether `p` is fixed by every swap `x_i ↔ x_{i+1}`, `i < n`.
pub fn is_symmetric(p: &Poly, n: u32) -> bool {
    (1..n).all(|i| p.swap_x(i) == *p)
}

/// The matrix whose row `ρ` lists the coefficients of `x^σ` in `G_ρ(x|a)`,
/// over `ρ, σ ⊆ (k^n)` in graded-lexicographic order.
pub fn transition_matrix<F: Field>(k: u32, n: u32, env: &Env<F>) -> Result<(Vec<Partition>, Vec<Vec<F>>)> {
    let basis = partitions_in_box(n as usize, k);
    let mut rows = Vec::with_capacity(basis.len());
    for rho in &basis {
        let g = groth_poly(
            &SkewShape::straight(rho.clone()),
            n,
            Kind::FactorialA,
            &Params::symbolic(),
            Execution::default(),
        );
        let mut row = Vec::with_capacity(basis.len());
        for sigma in &basis {
            let mut alpha = sigma.parts().to_vec();
            alpha.resize(n as usize, 0);
            let xm = x_monomial(&alpha);
            let coeff = Poly::from_terms(g.terms().filter_map(|(m, c)| {
                let (xs, rest) = m.split(|v| matches!(v, Var::X(_)));
                (xs == xm).then(|| (rest, c.clone()))
            }));
            row.push(env.eval(&coeff, &[])?);
        }
        rows.push(row);
    }
    Ok((basis, rows))
}

/// Determinant by Gaussian elimination.
pub fn determinant<F: Field>(m: &[Vec<F>]) -> Result<F> {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else { return Ok(F::zero()) };
        if p != col {
            a.swap(p, col);
            det = det.neg();
        }
        let pivot = a[col][col].clone();
        det = det.mul(&pivot);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].checked_div(&pivot)?;
            let (top, bottom) = a.split_at_mut(r);
            for (x, p) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = x.sub(&f.mul(p));
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{RatFunc, Rational};

    fn shape(s: &str) -> SkewShape {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn pi_x(n: u32) -> Poly {
        (1..=n).map(|i| Poly::one() + Poly::beta() * Poly::x(i)).product()
    }

    fn sym() -> Env<RatFunc> {
        Env::new(&Params::symbolic()).unwrap()
    }

    #[test]
    fn ordinary_examples() {
        for n in 1..=4 {
            let g = groth_ordinary(&shape("1"), n).value;
            assert_eq!(Poly::one() + Poly::beta() * g, pi_x(n));
        }
        assert!(groth_ordinary(&shape("1,1"), 1).value.is_zero());
        assert_eq!(groth_ordinary(&shape("1"), 2).value.to_string(), "x1 + x2 + b*x1*x2");
    }

    #[test]
    fn factorial_examples() {
        for n in 1..=3 {
            let g = groth_factorial(&shape("1"), n, Kind::FactorialA).value;
            let pi_a: Poly = (1..=n as i32).map(|i| Poly::one() + Poly::beta() * Poly::a(i)).product();
            assert_eq!(Poly::one() + Poly::beta() * g, pi_x(n) * pi_a);
        }
        assert_eq!(groth_factorial(&shape(""), 3, Kind::FactorialA).value, Poly::one());
        let g = groth_factorial(&shape("1"), 1, Kind::FactorialA).value;
        assert_eq!(g, Poly::x(1).oplus(&Poly::a(1)));
    }

    #[test]
    fn evaluation_points() {
        let env = sym();
        let om = |i| env.ominus(&env.a(i).unwrap()).unwrap();
        assert_eq!(eval_point(&p(""), 2, &env).unwrap(), vec![om(2), om(1)]);
        assert_eq!(eval_point(&p("1"), 1, &env).unwrap(), vec![om(2)]);
        assert_eq!(eval_point(&p("2,1"), 2, &env).unwrap(), vec![om(4), om(2)]);
        assert!(eval_point(&p("1,1,1"), 2, &env).is_err());
    }

    #[test]
    fn pi_products() {
        let env = sym();
        assert_eq!(pi_product::<RatFunc>(&[], &env), RatFunc::one());
        let pa = pi_product(&eval_point(&p(""), 2, &env).unwrap(), &env);
        let prod = pi_product(&[env.a(1).unwrap(), env.a(2).unwrap()], &env);
        assert_eq!(pa.mul(&prod), RatFunc::one());
        assert_eq!(pa, pi_at(&p(""), 2, &env).unwrap());
        let xs = [RatFunc::var(Var::X(1)), RatFunc::var(Var::X(2))];
        assert_eq!(pi_product(&xs, &env), RatFunc::from_poly(pi_x(2)));
    }

    #[test]
    fn vanishing_examples() {
        let env = sym();
        assert_eq!(vanishing_check(&p("1"), &p(""), 2, &env).unwrap(), Vanishing::Zero);
        let expect = RatFunc::new(Poly::a(1) - Poly::a(2), Poly::one() + Poly::beta() * Poly::a(2)).unwrap();
        assert_eq!(vanishing_check(&p("1"), &p("1"), 1, &env).unwrap(), Vanishing::NonzeroDiagonal(expect.clone()));
        assert_eq!(closed_form_diagonal(&p("1"), 1, &env).unwrap(), expect);
        assert_eq!(closed_form_diagonal(&p(""), 3, &env).unwrap(), RatFunc::one());
        for lam in partitions_in_box(2, 2) {
            match vanishing_check(&lam, &lam, 2, &env).unwrap() {
                Vanishing::NonzeroDiagonal(v) => assert_eq!(v, closed_form_diagonal(&lam, 2, &env).unwrap()),
                other => panic!("{lam}: {other:?}"),
            }
        }
    }

    #[test]
    fn substitution_of_the_point() {
        let g = groth_factorial(&shape("1"), 1, Kind::FactorialA).value;
        let env = sym();
        let pt = eval_point(&p("1"), 1, &env).unwrap();
        let v = env.eval(&g, &pt).unwrap();
        let expect = RatFunc::new(Poly::a(1) - Poly::a(2), Poly::one() + Poly::beta() * Poly::a(2)).unwrap();
        assert_eq!(v, expect);
    }

    #[test]
    fn monomial_functions() {
        let m22 = monomial_symmetric(&p("2,2"), 3);
        let sq = |i, j| {
            x_monomial(&{
                let mut a = vec![0; 3];
                a[i] = 2;
                a[j] = 2;
                a
            })
        };
        let expect = Poly::from_terms([(sq(0, 1), q(1)), (sq(1, 2), q(1)), (sq(0, 2), q(1))]);
        assert_eq!(m22, expect);
        assert_eq!(elementary(1, 2), Poly::x(1) + Poly::x(2));
    }

    #[test]
    fn symmetry_examples() {
        assert!(is_symmetric(&groth_factorial(&shape("2,1"), 3, Kind::FactorialA).value, 3));
        assert!(!is_symmetric(&Poly::x(1), 2));
        assert!(is_symmetric(&groth_ordinary(&shape("2,1/1"), 2).value, 2));
    }

    #[test]
    fn transition_determinants() {
        let env = sym();
        let (_, m) = transition_matrix(1, 1, &env).unwrap();
        let one_plus = RatFunc::from_poly(Poly::one() + Poly::beta() * Poly::a(1));
        assert_eq!(determinant(&m).unwrap(), one_plus);
        let zero = Env::<Rational>::new(&Params::ordinary().with_beta(Some(q(0)))).unwrap();
        let (_, m) = transition_matrix(1, 2, &zero).unwrap();
        assert_eq!(determinant(&m).unwrap(), q(1));
    }

    #[test]
    fn grading() {
        let g = groth_factorial(&shape("2,1/1"), 3, Kind::FactorialA).value;
        let deg = g.weighted_degrees(|v| if v == Var::Beta { -1 } else { 1 });
        assert_eq!(deg.into_iter().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn parallel_matches_sequential() {
        let th = shape("3,2,1/1");
        let a = groth_poly(&th, 3, Kind::FactorialA, &Params::symbolic(), Execution::Sequential);
        let b = groth_poly(&th, 3, Kind::FactorialA, &Params::symbolic(), Execution::Parallel);
        assert_eq!(a, b);
    }
}
