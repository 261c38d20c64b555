use std::collections::BTreeSet;

use proptest::prelude::*;

use grothendieck::coeffs::{lr_count, lr_count_naive};
use grothendieck::groth::{groth_poly, is_symmetric, vanishing_check, Kind, Vanishing};
use grothendieck::hecke::{divided_difference, HeckeElement};
use grothendieck::insertion::{tableau_insert, tableau_reverse_insert};
use grothendieck::par::Execution;
use grothendieck::ring::{Env, Monomial, Params, Poly, RandomSpec, Rational, Var};
use grothendieck::shapes::{partitions_in_box, Partition, Permutation, SkewShape};
use grothendieck::tableaux::enumerate_svt;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn var() -> impl Strategy<Value = Var> {
    prop_oneof![
        Just(Var::Beta),
        (1u32..=3).prop_map(Var::X),
        (1u32..=2).prop_map(Var::Y),
        (-2i32..=4).prop_map(Var::A),
        (-2i32..=4).prop_map(Var::B),
    ]
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec((var(), 1u32..=3), 0..4), rational()), 0..6)
        .prop_map(|terms| Poly::from_terms(terms.into_iter().map(|(m, c)| (Monomial::from_pairs(m), c))))
}

fn x_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..2, rational()), 0..5).prop_map(|terms| {
        Poly::from_terms(
            terms
                .into_iter()
                .map(|(e1, e2, e3, c)| (Monomial::from_pairs([(Var::X(1), e1), (Var::X(2), e2), (Var::X(3), e3)]), c)),
        )
    })
}

fn partition_in(rows: usize, cols: u32) -> impl Strategy<Value = Partition> {
    let all = partitions_in_box(rows, cols);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_json_round_trips(p in poly()) {
        prop_assert_eq!(Poly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn group_law_inverse(x in rational(), seed in 0u64..1000) {
        let params = Params::random(seed, RandomSpec { a: false, b: false });
        let env: Env<Rational> = Env::new(&params).unwrap();
        if let Ok(inv) = env.ominus(&x) {
            prop_assert_eq!(env.oplus(&x, &inv), Rational::from_integer(0.into()));
        }
    }

    #[test]
    fn permutation_inverse_and_length(v in Just((1u32..=5).collect::<Vec<_>>()).prop_shuffle(), i in 1u32..5) {
        let w = Permutation::new(v).unwrap();
        let ws = w.mul_simple(i);
        let expected = if w.is_ascent(i) { w.length() + 1 } else { w.length() - 1 };
        prop_assert_eq!(ws.length(), expected);
        prop_assert_eq!(ws.mul_simple(i), w.clone());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn straight_groth_is_symmetric(lam in partition_in(3, 2), kind in prop_oneof![Just(Kind::Ordinary), Just(Kind::FactorialA)]) {
        let g = groth_poly(&SkewShape::straight(lam), 3, kind, &Params::symbolic(), Execution::Sequential);
        prop_assert!(is_symmetric(&g, 3));
    }

    #[test]
    fn parallel_fold_matches_sequential(lam in partition_in(3, 3), inner in partition_in(2, 1)) {
        let Ok(theta) = SkewShape::new(lam, inner) else { return Ok(()) };
        let p = Params::symbolic();
        prop_assert_eq!(
            groth_poly(&theta, 3, Kind::FactorialB, &p, Execution::Parallel),
            groth_poly(&theta, 3, Kind::FactorialB, &p, Execution::Sequential)
        );
    }

    #[test]
    fn vanishing_off_containment(lam in partition_in(3, 2), mu in partition_in(3, 2), seed in 0u64..100) {
        let params = Params::random(seed, RandomSpec { a: true, b: false });
        let env: Env<Rational> = Env::new(&params).unwrap();
        let v = vanishing_check(&lam, &mu, 3, &env).unwrap();
        if !mu.contains(&lam) {
            prop_assert!(matches!(v, Vanishing::Zero));
        }
        if lam == mu {
            prop_assert!(matches!(v, Vanishing::NonzeroDiagonal(_)));
        }
    }

    #[test]
    fn insertion_round_trip(lam in partition_in(2, 2), n in 1u32..=3, mask in 0u32..8, pick in any::<prop::sample::Index>()) {
        let s: BTreeSet<u32> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        if lam.len() > n as usize {
            return Ok(());
        }
        let tabs = enumerate_svt(&SkewShape::straight(lam.clone()), n, None);
        let t = pick.get(&tabs);
        let t2 = tableau_insert(&s, t).unwrap();
        prop_assert!(t2.is_valid());
        prop_assert!(lam.is_tangle_to(t2.shape().outer()));
        prop_assert_eq!(t2.total_entries(), t.total_entries() + s.len());
        let (s0, t0) = tableau_reverse_insert(&t2, &lam).unwrap();
        prop_assert_eq!(&s0, &s);
        prop_assert_eq!(&t0, t);
    }

    #[test]
    fn pruned_lr_count_matches_naive(mu in partition_in(2, 2), nu in partition_in(3, 3), th in prop_oneof![Just("1"), Just("2"), Just("1,1"), Just("2,1/1")]) {
        let theta: SkewShape = th.parse().unwrap();
        prop_assert_eq!(lr_count(&theta, &mu, &nu, 3, Execution::Sequential), lr_count_naive(&theta, &mu, &nu, 3));
    }

    #[test]
    fn divided_difference_squares_to_minus_beta(p in x_poly(), i in 1u32..=2) {
        let once = divided_difference(i, &p).unwrap();
        let twice = divided_difference(i, &once).unwrap();
        prop_assert_eq!(twice, -(Poly::beta() * once));
    }

    #[test]
    fn hecke_product_is_associative(
        w1 in Just((1u32..=4).collect::<Vec<_>>()).prop_shuffle(),
        w2 in Just((1u32..=4).collect::<Vec<_>>()).prop_shuffle(),
        w3 in Just((1u32..=4).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let e = |v: Vec<u32>| HeckeElement::basis(3, Permutation::new(v).unwrap());
        let (a, b, c) = (e(w1), e(w2), e(w3));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }
}
