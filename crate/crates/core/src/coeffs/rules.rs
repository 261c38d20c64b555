//! Combinatorial formulas for the coefficients.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::groth::eval_index;
use crate::par::Execution;
use crate::ring::{q, Env, Field, Poly};
use crate::shapes::{partitions_between, Partition, SkewShape};
use crate::tableaux::{enumerate_svt, is_lattice_word, mask_to_set, star_concatenate, SetValuedTableau, SvtLayout};

/// `β^e · count`, or zero when `e < 0`.
fn beta_scaled(count: u64, e: i64) -> Poly {
    if count == 0 || e < 0 {
        return Poly::zero();
    }
    Poly::beta().pow(e as u32).scale(&q(count as i64))
}

/// Number of tableaux of shape `theta` whose column word drives `mu` to `nu`.
///
/// Branches die as soon as the running partition leaves `nu`.
pub fn lr_count(theta: &SkewShape, mu: &Partition, nu: &Partition, n: u32, exec: Execution) -> u64 {
    if !nu.contains(mu) || nu.len() > n as usize {
        return 0;
    }
    let layout = SvtLayout::new(theta, n);
    layout.fold(
        exec,
        mu.clone(),
        |rho, _, m| {
            let mut rho = rho.clone();
            for r in mask_to_set(m).into_iter().rev() {
                rho = rho.add_box(r as usize).filter(|p| nu.contains(p))?;
            }
            Some(rho)
        },
        |_, rho| u64::from(rho == nu),
        || 0,
        |a, b| a + b,
    )
}

/// [`lr_count`] by full enumeration and replay of each column word.
pub fn lr_count_naive(theta: &SkewShape, mu: &Partition, nu: &Partition, n: u32) -> u64 {
    let cap = (nu.size() as usize).checked_sub(mu.size() as usize);
    let Some(cap) = cap else { return 0 };
    enumerate_svt(theta, n, Some(cap)).iter().filter(|t| t.fits_sequence(mu, nu).is_some()).count() as u64
}

/// `c^ν_{θμ}`: `β^{|ν|-|μ|-|θ|}` times the number of tableaux of shape `θ`
/// whose entries, read in column-word order, drive `μ` to `ν`.
pub fn lr_combinatorial(theta: &SkewShape, mu: &Partition, nu: &Partition, n: u32) -> Poly {
    let e = nu.size() as i64 - mu.size() as i64 - theta.size() as i64;
    if e < 0 {
        return Poly::zero();
    }
    beta_scaled(lr_count(theta, mu, nu, n, Execution::default()), e)
}

/// The tableaux counted by [`lr_combinatorial`], each with its chain.
pub fn lr_witnesses(
    theta: &SkewShape,
    mu: &Partition,
    nu: &Partition,
    n: u32,
) -> Vec<(SetValuedTableau, Vec<Partition>)> {
    let Some(cap) = (nu.size() as usize).checked_sub(mu.size() as usize) else { return Vec::new() };
    enumerate_svt(theta, n, Some(cap)).into_iter().filter_map(|t| t.fits_sequence(mu, nu).map(|c| (t, c))).collect()
}

/// Tableaux of shape `shape` whose column word is a lattice word of content `nu`.
pub fn lattice_count(shape: &SkewShape, nu: &Partition, n: u32) -> u64 {
    enumerate_svt(shape, n, Some(nu.size() as usize))
        .iter()
        .filter(|t| {
            let w = t.column_word();
            if w.len() != nu.size() as usize || !is_lattice_word(&w) {
                return false;
            }
            let mut content = vec![0u32; n as usize];
            for &x in &w {
                content[x as usize - 1] += 1;
            }
            Partition::new(content).is_ok_and(|c| &c == nu)
        })
        .count() as u64
}

/// `c^ν_{λμ}` from lattice-word tableaux on `λ * μ`, scaled by `β^{|ν|-|λ|-|μ|}`.
pub fn buch_product(lam: &Partition, mu: &Partition, nu: &Partition, n: u32) -> Poly {
    let e = nu.size() as i64 - lam.size() as i64 - mu.size() as i64;
    beta_scaled(lattice_count(&star_concatenate(lam, mu), nu, n), e)
}

/// `c^ν_{θφ}` from lattice-word tableaux on `θ`, scaled by `β^{|ν|-|θ|}`.
pub fn buch_skew(theta: &SkewShape, nu: &Partition, n: u32) -> Poly {
    let e = nu.size() as i64 - theta.size() as i64;
    beta_scaled(lattice_count(theta, nu, n), e)
}

/// The bare lattice-tableau count on `θ`, with no power of `β`.
pub fn buch_skew_unscaled(theta: &SkewShape, nu: &Partition, n: u32) -> Poly {
    beta_scaled(lattice_count(theta, nu, n), 0)
}

/// `g^ν_{θμ}` for `P = G_θ(x|b)` when `θ` has at most one cell per column.
///
/// Sums `β^{|T|-|θ|} w(T)` over tableaux `T` and increasing choices of
/// barred entries driving `μ` to `ν`. The choice of bars is folded into a
/// state `ρ ↦ weight` carried along the column word.
pub fn row_shape_rule<F: Field>(theta: &SkewShape, mu: &Partition, nu: &Partition, n: u32, env: &Env<F>) -> Result<F> {
    if !theta.is_row_shape() {
        return Err(Error::NotRowShape(theta.to_string()));
    }
    if nu.len() > n as usize {
        return Err(Error::LengthExceedsN { len: nu.len(), n: n as usize });
    }
    if !nu.contains(mu) {
        return Ok(F::zero());
    }
    let layout = SvtLayout::new(theta, n);
    let mut a_rho: HashMap<(Partition, u32), F> = HashMap::new();
    for rho in partitions_between(mu, nu) {
        for r in 1..=n {
            let a = env.a(eval_index(&rho, n, r as usize))?;
            a_rho.insert((rho.clone(), r), env.ominus(&a)?);
        }
    }
    let mut b_rc: HashMap<(usize, u32), F> = HashMap::new();
    for (k, c) in layout.cells().iter().enumerate() {
        for r in 1..=n {
            b_rc.insert((k, r), env.b(r as i32 + c.content())?);
        }
    }
    let step = |state: &BTreeMap<Partition, F>, k: usize, m: u32| -> Option<BTreeMap<Partition, F>> {
        let entries = mask_to_set(m);
        let scale = env.beta.pow(entries.len() as u32 - 1);
        let mut cur: BTreeMap<Partition, F> = state.iter().map(|(p, v)| (p.clone(), v.mul(&scale))).collect();
        for &r in entries.iter().rev() {
            let b = &b_rc[&(k, r)];
            let mut next: BTreeMap<Partition, F> = BTreeMap::new();
            let mut put = |p: Partition, v: F| {
                let s = next.remove(&p).map_or(v.clone(), |old| old.add(&v));
                next.insert(p, s);
            };
            for (rho, v) in &cur {
                let a = &a_rho[&(rho.clone(), r)];
                put(rho.clone(), v.mul(&env.oplus(a, b)));
                if let Some(up) = rho.add_box(r as usize).filter(|p| nu.contains(p)) {
                    put(up, v.mul(&env.one_plus_beta(a)).mul(&env.one_plus_beta(b)));
                }
            }
            cur = next;
        }
        cur.retain(|_, v| !v.is_zero());
        (!cur.is_empty()).then_some(cur)
    };
    let init: BTreeMap<Partition, F> = [(mu.clone(), F::one())].into_iter().collect();
    Ok(layout.fold(
        Execution::Sequential,
        init,
        step,
        |_, s| s.get(nu).cloned().unwrap_or_else(F::zero),
        F::zero,
        |a, b| a.add(&b),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groth::{eval_point, groth_eval, Kind};
    use crate::ring::{Params, RatFunc};

    fn p(s: &[u32]) -> Partition {
        Partition::of(s)
    }

    fn sk(s: &str) -> SkewShape {
        s.parse().unwrap()
    }

    #[test]
    fn lr_examples() {
        let one = sk("1");
        assert_eq!(lr_combinatorial(&one, &p(&[1]), &p(&[2]), 2), Poly::one());
        assert_eq!(lr_combinatorial(&one, &p(&[1]), &p(&[2, 1]), 2), Poly::beta());
        assert!(lr_combinatorial(&one, &p(&[1]), &p(&[1]), 2).is_zero());
        assert_eq!(lr_combinatorial(&one, &p(&[1]), &p(&[1, 1]), 2), Poly::one());
    }

    #[test]
    fn pruned_count_matches_naive() {
        for theta in ["1", "2", "1,1", "2,1", "2,1/1"] {
            let theta = sk(theta);
            for mu in crate::shapes::partitions_in_box(3, 2) {
                for nu in partitions_between(&mu, &Partition::rectangle(3, 3)) {
                    assert_eq!(
                        lr_count(&theta, &mu, &nu, 3, Execution::Sequential),
                        lr_count_naive(&theta, &mu, &nu, 3),
                        "{theta} {mu} {nu}"
                    );
                }
            }
        }
    }

    #[test]
    fn buch_examples() {
        assert_eq!(buch_product(&p(&[1]), &p(&[1]), &p(&[2]), 2), Poly::one());
        assert_eq!(buch_skew(&sk("2,1/1"), &p(&[2, 1]), 2), Poly::beta());
        assert_eq!(buch_skew(&sk("1"), &p(&[1]), 2), Poly::one());
        assert_eq!(buch_skew_unscaled(&sk("2,1/1"), &p(&[2, 1]), 2), Poly::one());
    }

    #[test]
    fn row_shape_trivial_cases() {
        let env: Env<RatFunc> = Env::new(&Params::symbolic()).unwrap();
        let lam = p(&[1]);
        assert_eq!(
            row_shape_rule(&SkewShape::straight(Partition::empty()), &lam, &lam, 2, &env).unwrap(),
            RatFunc::one()
        );
        let theta = sk("1");
        let direct = groth_eval(&theta, Kind::FactorialB, &env, &eval_point(&lam, 2, &env).unwrap()).unwrap();
        assert_eq!(row_shape_rule(&theta, &lam, &lam, 2, &env).unwrap(), direct);
        assert!(matches!(row_shape_rule(&sk("1,1"), &lam, &lam, 2, &env), Err(Error::NotRowShape(_))));
    }
}
