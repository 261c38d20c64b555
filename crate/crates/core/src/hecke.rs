//! The algebra `H_n`, isobaric divided differences and double Grothendieck
//! polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::groth::{groth_poly, Kind};
use crate::par::Execution;
use crate::ring::{q, Params, Poly, Var};
use crate::shapes::{Partition, Permutation, SkewShape};

/// A reduced word for `w`, built by stripping right descents.
pub fn reduced_word(w: &Permutation) -> Vec<u32> {
    let mut w = w.clone();
    let mut rev = Vec::with_capacity(w.length());
    while let Some(i) = (1..w.support() as u32).find(|&i| w.apply(i) > w.apply(i + 1)) {
        rev.push(i);
        w = w.mul_simple(i);
    }
    rev.reverse();
    rev
}

/// An element `Σ c_w u_w` of `H_n` with coefficients in the polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<Permutation, Poly>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        HeckeElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(n, Permutation::identity())
    }

    /// `u_w`.
    pub fn basis(n: usize, w: Permutation) -> Self {
        let mut e = Self::zero(n);
        e.terms.insert(w, Poly::one());
        e
    }

    fn check_index(n: usize, i: usize) -> Result<()> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        Ok(())
    }

    /// `u_i`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Self::check_index(n, i)?;
        Ok(Self::basis(n, Permutation::from_word(&[i as u32])))
    }

    /// `h_i(t) = 1 + t u_i`.
    pub fn h(n: usize, i: usize, t: &Poly) -> Result<Self> {
        Ok(Self::one(n).add(&Self::generator(n, i)?.scale(t)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Permutation) -> Poly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: Permutation, c: Poly) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&w) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(w, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Poly::int(-1)))
    }

    pub fn scale(&self, c: &Poly) -> Self {
        let mut out = Self::zero(self.n);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&Poly) -> Result<Poly>) -> Result<Self> {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// `self · u_i`, using `u_w u_i = u_{ws_i}` on ascents and `βu_w` otherwise.
    pub fn mul_generator(&self, i: usize) -> Result<Self> {
        Self::check_index(self.n, i)?;
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            if w.is_ascent(i as u32) {
                out.add_term(w.mul_simple(i as u32), c.clone());
            } else {
                out.add_term(w.clone(), c * &Poly::beta());
            }
        }
        Ok(out)
    }

    /// `self · h_i(t)`.
    pub fn mul_h(&self, i: usize, t: &Poly) -> Result<Self> {
        Ok(self.add(&self.mul_generator(i)?.scale(t)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::MismatchedN(self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        for (v, d) in &other.terms {
            let mut part = self.clone();
            for &i in &reduced_word(v) {
                part = part.mul_generator(i as usize)?;
            }
            out = out.add(&part.scale(d));
        }
        Ok(out)
    }

    /// `h_{i_1}(t_1) h_{i_2}(t_2) ⋯` for the listed factors.
    pub fn h_product(n: usize, factors: &[(usize, Poly)]) -> Result<Self> {
        factors.iter().try_fold(Self::one(n), |acc, (i, t)| acc.mul_h(*i, t))
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*u[{w}]")?;
        }
        Ok(())
    }
}

/// `A_i(t) = h_n(t) h_{n-1}(t) ⋯ h_i(t)` as a factor list.
pub fn a_factors(n: usize, i: usize, t: &Poly) -> Vec<(usize, Poly)> {
    (i..=n).rev().map(|j| (j, t.clone())).collect()
}

/// `B_i(t) = h_i(t) h_{i+1}(t) ⋯ h_n(t)` as a factor list.
pub fn b_factors(n: usize, i: usize, t: &Poly) -> Vec<(usize, Poly)> {
    (i..=n).map(|j| (j, t.clone())).collect()
}

pub fn a_i(n: usize, i: usize, t: &Poly) -> Result<HeckeElement> {
    HeckeElement::h_product(n, &a_factors(n, i, t))
}

pub fn b_i(n: usize, i: usize, t: &Poly) -> Result<HeckeElement> {
    HeckeElement::h_product(n, &b_factors(n, i, t))
}

/// `𝔊(x) = A_1(x_1) A_2(x_2) ⋯ A_n(x_n)`.
pub fn g_product(n: usize) -> Result<HeckeElement> {
    let f: Vec<_> = (1..=n).flat_map(|i| a_factors(n, i, &Poly::x(i as u32))).collect();
    HeckeElement::h_product(n, &f)
}

/// `𝔊̄(y) = B_n(y_n) ⋯ B_1(y_1)`.
pub fn g_bar_product(n: usize) -> Result<HeckeElement> {
    let f: Vec<_> = (1..=n).rev().flat_map(|i| b_factors(n, i, &Poly::y(i as u32))).collect();
    HeckeElement::h_product(n, &f)
}

/// `∏_{i=1}^{n} ∏_{j=n+1-i}^{1} h_{i+j-1}(x_i ⊕ y_j)`.
pub fn staircase_product(n: usize) -> Result<HeckeElement> {
    let mut f = Vec::new();
    for i in 1..=n {
        for j in (1..=n + 1 - i).rev() {
            f.push((i + j - 1, Poly::x(i as u32).oplus(&Poly::y(j as u32))));
        }
    }
    HeckeElement::h_product(n, &f)
}

/// `π_i p = ((1 + βx_{i+1}) p - (1 + βx_i) s_i p) / (x_i - x_{i+1})`.
pub fn divided_difference(i: u32, p: &Poly) -> Result<Poly> {
    let lin = |j: u32| Poly::one() + Poly::beta() * Poly::x(j);
    let num = lin(i + 1) * p - lin(i) * p.swap_x(i);
    num.exact_div_by_linear(i)
}

/// `𝔊_{w_0} = ∏_{i+j ≤ n+1} (x_i ⊕ y_j)` for `w_0 ∈ S_{n+1}`.
pub fn top_double_groth(n: usize) -> Poly {
    let mut p = Poly::one();
    for i in 1..=n as u32 {
        for j in 1..=(n as u32 + 1 - i) {
            p = p * Poly::x(i).oplus(&Poly::y(j));
        }
    }
    p
}

/// Which ascent the descending recursion follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AscentChoice {
    First,
    Last,
}

/// Memoized `𝔊_w = π_i 𝔊_{ws_i}` for `w ∈ S_{n+1}`.
pub struct DoubleGroth {
    n: usize,
    choice: AscentChoice,
    memo: HashMap<Permutation, Poly>,
}

impl DoubleGroth {
    pub fn new(n: usize, choice: AscentChoice) -> Self {
        DoubleGroth { n, choice, memo: HashMap::new() }
    }

    pub fn get(&mut self, w: &Permutation) -> Result<Poly> {
        if w.support() > self.n + 1 {
            return Err(Error::PreconditionViolated(format!("{w} is not in S_{}", self.n + 1)));
        }
        if let Some(p) = self.memo.get(w) {
            return Ok(p.clone());
        }
        let asc = w.ascents(self.n + 1);
        let p = match self.choice {
            AscentChoice::First => asc.first(),
            AscentChoice::Last => asc.last(),
        };
        let p = match p {
            None => top_double_groth(self.n),
            Some(&i) => divided_difference(i, &self.get(&w.mul_simple(i))?)?,
        };
        self.memo.insert(w.clone(), p.clone());
        Ok(p)
    }
}

/// `𝔊_w` by divided differences from `w_0`, cross-checked along two ascent chains.
pub fn double_groth_dd(w: &Permutation, n: usize) -> Result<Poly> {
    let a = DoubleGroth::new(n, AscentChoice::First).get(w)?;
    let b = DoubleGroth::new(n, AscentChoice::Last).get(w)?;
    if a != b {
        return Err(Error::PreconditionViolated(format!("divided differences disagree for {w}")));
    }
    Ok(a)
}

/// The coefficient of `u_w` in `𝔊̄(y)𝔊(x)`.
pub fn double_groth_gen(w: &Permutation, n: usize) -> Result<Poly> {
    Ok(g_bar_product(n)?.mul(&g_product(n)?)?.coefficient(w))
}

/// `B(y_l) ⋯ B(y_1) A(x_1) ⋯ A(x_k)` in `H_n`.
pub fn stable_product(k: usize, l: usize, n: usize) -> Result<HeckeElement> {
    let mut f = Vec::new();
    for j in (1..=l).rev() {
        f.extend(b_factors(n, 1, &Poly::y(j as u32)));
    }
    for m in 1..=k {
        f.extend(a_factors(n, 1, &Poly::x(m as u32)));
    }
    HeckeElement::h_product(n, &f)
}

/// `G_w(x; y)` restricted to `x_1…x_k`, `y_1…y_l`.
pub fn stable_double_groth(w: &Permutation, k: usize, l: usize, n: usize) -> Result<Poly> {
    Ok(stable_product(k, l, n)?.coefficient(w))
}

/// An element `Σ c_μ [μ]` of the module `V`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VElement {
    terms: BTreeMap<Partition, Poly>,
}

impl VElement {
    /// `[μ]`.
    pub fn basis(mu: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(mu, Poly::one());
        VElement { terms }
    }

    pub fn coefficient(&self, mu: &Partition) -> Poly {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Poly)> {
        self.terms.iter()
    }

    fn add_term(&mut self, mu: Partition, c: Poly) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&mu) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(mu, v);
        }
    }

    /// `u_i [μ]` with diagonal `p` the main one: adds the outer corner on
    /// diagonal `i`, scales by `β` at an inner corner there, else kills.
    pub fn apply_generator(&self, i: usize, p: usize) -> Self {
        let mut out = VElement::default();
        let diag = |r: usize, c: u32| p as i64 + c as i64 - r as i64;
        for (mu, c) in &self.terms {
            let outer = (1..=mu.len() + 1).find_map(|r| mu.add_box(r).filter(|_| diag(r, mu.part(r) + 1) == i as i64));
            if let Some(up) = outer {
                out.add_term(up, c.clone());
                continue;
            }
            let inner = (1..=mu.len()).any(|r| mu.part(r + 1) < mu.part(r) && diag(r, mu.part(r)) == i as i64);
            if inner {
                out.add_term(mu.clone(), c * &Poly::beta());
            }
        }
        out
    }

    /// `h_i(t) [·]`.
    pub fn apply_h(&self, i: usize, t: &Poly, p: usize) -> Self {
        let mut out = self.clone();
        for (mu, c) in self.apply_generator(i, p).terms {
            out.add_term(mu, c * t);
        }
        out
    }

    /// `h · self`.
    pub fn act(&self, h: &HeckeElement, p: usize) -> Self {
        let mut out = VElement::default();
        for (w, c) in h.terms() {
            let mut v = self.clone();
            for &i in reduced_word(w).iter().rev() {
                v = v.apply_generator(i as usize, p);
            }
            for (mu, d) in v.terms {
                out.add_term(mu, d * c);
            }
        }
        out
    }
}

/// The factors of `Q = ∏_{m=k}^{1} ∏_{i=n}^{1} h_i(x_m ⊕ y_{m+i-p})`, with
/// `y_j = 0` for `j ≤ 0`.
pub fn q_factors(k: usize, n: usize, p: usize) -> Vec<(usize, Poly)> {
    let mut f = Vec::new();
    for m in (1..=k).rev() {
        for i in (1..=n).rev() {
            let j = m as i64 + i as i64 - p as i64;
            let x = Poly::x(m as u32);
            f.push((i, if j >= 1 { x.oplus(&Poly::y(j as u32)) } else { x }));
        }
    }
    f
}

/// The three polynomials compared for a partition in finitely many variables.
#[derive(Clone, Debug, PartialEq)]
pub struct FinalReport {
    pub lambda: Partition,
    pub p: usize,
    pub k: usize,
    pub n: usize,
    pub module_coefficient: Poly,
    pub factorial: Poly,
    pub algebra_coefficient: Poly,
}

impl FinalReport {
    pub fn holds(&self) -> bool {
        self.module_coefficient == self.factorial && self.factorial == self.algebra_coefficient
    }
}

/// Computes the `[λ]` coefficient of `Q[φ]`, `G_λ(x_1…x_k|y)` and the
/// `u_{w(λ)}` coefficient of `Q`.
pub fn theorem_final_check(lam: &Partition, p: usize, k: usize, n: usize) -> Result<FinalReport> {
    if p < lam.len() || n + 1 < p + lam.first() as usize {
        return Err(Error::PreconditionViolated(format!(
            "need p ≥ ℓ(λ) and n ≥ p + λ_1 - 1 for λ = {lam}, p = {p}, n = {n}"
        )));
    }
    let factors = q_factors(k, n, p);
    let mut v = VElement::basis(Partition::empty());
    for (i, t) in factors.iter().rev() {
        v = v.apply_h(*i, t, p);
    }
    let module_coefficient = v.coefficient(lam);
    let g = groth_poly(
        &SkewShape::straight(lam.clone()),
        k as u32,
        Kind::FactorialA,
        &Params::symbolic(),
        Execution::default(),
    );
    let factorial = g.rename(|x| match x {
        Var::A(i) => Var::Y(i as u32),
        other => other,
    });
    let (w, _) = Permutation::grassmannian(lam, p)?;
    let algebra_coefficient = HeckeElement::h_product(n, &factors)?.coefficient(&w);
    Ok(FinalReport { lambda: lam.clone(), p, k, n, module_coefficient, factorial, algebra_coefficient })
}

/// `p` with `x_i = 0`.
pub fn set_x_zero(p: &Poly, i: u32) -> Poly {
    p.specialize(|v| (v == Var::X(i)).then(|| q(0)))
}
