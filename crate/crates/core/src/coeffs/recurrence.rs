//! The coefficient recurrence and its chain-sum solution.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groth::pi_at;
use crate::ring::{Env, Field};
use crate::shapes::{partitions_between, Partition};

/// `λ ↦ P(a_λ)`.
pub type Evaluator<'a, F> = dyn Fn(&Partition) -> Result<F> + Sync + 'a;

/// Memoized solver for `P(x)G_μ(x|a) = Σ_ν g^ν_μ G_ν(x|a)`.
pub struct Recurrence<'a, F> {
    n: u32,
    env: &'a Env<F>,
    p_at: &'a Evaluator<'a, F>,
    pi: HashMap<Partition, F>,
    p: HashMap<Partition, F>,
    memo: HashMap<(Partition, Partition), F>,
}

impl<'a, F: Field> Recurrence<'a, F> {
    pub fn new(p_at: &'a Evaluator<'a, F>, n: u32, env: &'a Env<F>) -> Self {
        Recurrence { n, env, p_at, pi: HashMap::new(), p: HashMap::new(), memo: HashMap::new() }
    }

    fn pi(&mut self, lam: &Partition) -> Result<F> {
        if let Some(v) = self.pi.get(lam) {
            return Ok(v.clone());
        }
        let v = pi_at(lam, self.n, self.env)?;
        self.pi.insert(lam.clone(), v.clone());
        Ok(v)
    }

    fn p(&mut self, lam: &Partition) -> Result<F> {
        if let Some(v) = self.p.get(lam) {
            return Ok(v.clone());
        }
        let v = (self.p_at)(lam)?;
        self.p.insert(lam.clone(), v.clone());
        Ok(v)
    }

    /// `g^ν_μ`.
    pub fn g(&mut self, mu: &Partition, nu: &Partition) -> Result<F> {
        if !nu.contains(mu) {
            return Ok(F::zero());
        }
        if nu.len() > self.n as usize {
            return Err(Error::LengthExceedsN { len: nu.len(), n: self.n as usize });
        }
        if mu == nu {
            return self.p(mu);
        }
        let key = (mu.clone(), nu.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let pi_mu = self.pi(mu)?;
        let pi_nu = self.pi(nu)?;
        let between = partitions_between(mu, nu);
        let mut acc = F::zero();
        for lam in between.iter().filter(|l| *l != mu && mu.is_tangle_to(l)) {
            let g = self.g(lam, nu)?;
            acc = acc.add(&pi_mu.mul(&self.env.beta.pow(lam.size() - mu.size())).mul(&g));
        }
        for eta in between.iter().filter(|e| *e != nu && e.is_tangle_to(nu)) {
            let g = self.g(mu, eta)?;
            let pi_eta = self.pi(eta)?;
            acc = acc.sub(&pi_eta.mul(&self.env.beta.pow(nu.size() - eta.size())).mul(&g));
        }
        let den = pi_nu.sub(&pi_mu);
        if den.is_zero() {
            return Err(Error::DegenerateAssignment(format!("Π(a_{nu}) = Π(a_{mu})")));
        }
        let v = acc.checked_div(&den)?;
        self.memo.insert(key, v.clone());
        Ok(v)
    }
}

/// `g^ν_μ` by the recurrence.
pub fn recurrence_coefficients<F: Field>(
    p_at: &Evaluator<'_, F>,
    mu: &Partition,
    nu: &Partition,
    n: u32,
    env: &Env<F>,
) -> Result<F> {
    Recurrence::new(p_at, n, env).g(mu, nu)
}

/// Every chain `μ = ρ_0 ⇉* ρ_1 ⇉* … ⇉* ρ_l = ν` with distinct consecutive terms.
pub fn strict_tangle_chains(mu: &Partition, nu: &Partition) -> Vec<Vec<Partition>> {
    fn rec(cur: &mut Vec<Partition>, nu: &Partition, all: &[Partition], out: &mut Vec<Vec<Partition>>) {
        let last = cur.last().unwrap().clone();
        if &last == nu {
            out.push(cur.clone());
            return;
        }
        for next in all.iter().filter(|p| **p != last && last.is_tangle_to(p)) {
            cur.push(next.clone());
            rec(cur, nu, all, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if !nu.contains(mu) {
        return out;
    }
    let all = partitions_between(mu, nu);
    rec(&mut vec![mu.clone()], nu, &all, &mut out);
    out
}

/// `g^ν_μ` as `β^{|ν/μ|} Σ_R Π(ρ_0)…Π(ρ_{l-1}) Σ_k P(a_{ρ_k}) ∏_{i≠k} 1/(Π(ρ_k) - Π(ρ_i))`.
pub fn chain_sum_solution<F: Field>(
    p_at: &Evaluator<'_, F>,
    mu: &Partition,
    nu: &Partition,
    n: u32,
    env: &Env<F>,
) -> Result<F> {
    if !nu.contains(mu) {
        return Ok(F::zero());
    }
    if nu.len() > n as usize {
        return Err(Error::LengthExceedsN { len: nu.len(), n: n as usize });
    }
    let mut pi: HashMap<Partition, F> = HashMap::new();
    let mut p: HashMap<Partition, F> = HashMap::new();
    for rho in partitions_between(mu, nu) {
        pi.insert(rho.clone(), pi_at(&rho, n, env)?);
        p.insert(rho.clone(), p_at(&rho)?);
    }
    let mut total = F::zero();
    for chain in strict_tangle_chains(mu, nu) {
        let l = chain.len() - 1;
        let prefix = chain[..l].iter().fold(F::one(), |acc, r| acc.mul(&pi[r]));
        let mut inner = F::zero();
        for k in 0..=l {
            let mut den = F::one();
            for i in (0..=l).filter(|&i| i != k) {
                den = den.mul(&pi[&chain[k]].sub(&pi[&chain[i]]));
            }
            if den.is_zero() {
                return Err(Error::DegenerateAssignment(format!("repeated Π value along a chain to {nu}")));
            }
            inner = inner.add(&p[&chain[k]].checked_div(&den)?);
        }
        total = total.add(&prefix.mul(&inner));
    }
    Ok(total.mul(&env.beta.pow(nu.size() - mu.size())))
}
