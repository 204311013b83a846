use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use seifert_core::arith::{
    dedekind_rademacher, dedekind_sum, frac, int, lambda_sum, lambda_sum_numeric, mod_inverse, rat, sawtooth, to_f64,
};
use seifert_core::invariants::{delta, delta_multiset, delta_pair, delta_via_n, eta_f0, eta_f0_raw, PlusFirst, Unresolved};
use seifert_core::lens::{lens_delta_closed_b1, lens_delta_raw};
use seifert_core::plumbing::{
    eval_neg_cont_frac, is_negative_definite, lattice_signature, neg_cont_frac, sigma_relation_check, star_lattice_double,
    IntLattice, PlumbingGraph,
};
use seifert_core::seifert::{degree_l, desing_degree, h1_order, SeifertData};
use seifert_core::spinc::{check_conditions, enumerate_spinc, trivial_holonomy_classes, Tau};

fn coprime_pair(max_a: i64) -> impl Strategy<Value = (i64, i64)> {
    (1..=max_a, -200i64..200).prop_filter_map("coprime", |(a, b)| (b.gcd(&a) == 1).then_some((b, a)))
}

fn small_rational() -> impl Strategy<Value = seifert_core::Rational> {
    (-50i64..50, 1i64..13).prop_map(|(p, q)| rat(p, q))
}

fn raw_seifert(max_n: usize, max_a: i64) -> impl Strategy<Value = SeifertData> {
    (
        -4i64..=4,
        prop::collection::vec((1..=max_a, -40i64..40), 0..=max_n),
    )
        .prop_map(|(b, arms)| {
            let arms: Vec<(i64, i64)> = arms
                .into_iter()
                .map(|(a, bi)| if bi.gcd(&a) == 1 { (a, bi) } else { (a, 1) })
                .collect();
            SeifertData::new(b, &arms).unwrap()
        })
}

fn normalized(max_n: usize, max_a: i64) -> impl Strategy<Value = SeifertData> {
    raw_seifert(max_n, max_a).prop_map(|s| s.normalize())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sawtooth_is_odd(x in small_rational()) {
        prop_assert_eq!(sawtooth(&-x.clone()), -sawtooth(&x));
    }

    #[test]
    fn inverse_is_inverse((b, a) in coprime_pair(200)) {
        let v = mod_inverse(b, a).unwrap();
        prop_assert!((0..a.max(1)).contains(&v));
        if a > 1 {
            prop_assert_eq!((b * v).rem_euclid(a), 1);
        }
    }

    #[test]
    fn dedekind_odd_and_periodic((b, a) in coprime_pair(80), k in -3i64..3) {
        let s = dedekind_sum(b, a).unwrap();
        prop_assert_eq!(dedekind_sum(-b, a).unwrap(), -s.clone());
        prop_assert_eq!(dedekind_sum(b + k * a, a).unwrap(), s);
    }

    #[test]
    fn rademacher_is_periodic((b, a) in coprime_pair(25), x in small_rational(), y in small_rational(), k in -2i64..3) {
        let base = dedekind_rademacher(b, a, &x, &y).unwrap();
        prop_assert_eq!(dedekind_rademacher(b, a, &(&x + int(k)), &y).unwrap(), base.clone());
        prop_assert_eq!(dedekind_rademacher(b, a, &x, &(&y + int(k))).unwrap(), base);
    }

    #[test]
    fn rademacher_shift((b, a) in coprime_pair(30), x in small_rational(), y in small_rational(), m in -3i64..=3) {
        prop_assert_eq!(
            dedekind_rademacher(b, a, &x, &y).unwrap(),
            dedekind_rademacher(b - m * a, a, &(&x + int(m) * &y), &y).unwrap()
        );
    }

    #[test]
    fn lambda_identities((b, a) in coprime_pair(60), n in -100i64..100) {
        let lam = lambda_sum(b, a, n).unwrap();
        prop_assert_eq!(lambda_sum(b, a, -1 - b - n).unwrap(), lam.clone());
        prop_assert_eq!(lambda_sum(b, a, n + a).unwrap(), lam.clone());
        let binv = mod_inverse(b, a).unwrap();
        let x = rat(n, a);
        let rel = -dedekind_rademacher(b, a, &x, &int(0)).unwrap() + rat(a - 1, 4 * a)
            - frac(&x) / int(2) - sawtooth(&rat(binv * n, a)) / int(2);
        prop_assert_eq!(rel, lam.clone());
        let half = rat(1, 2);
        let shifted = (int(n) + rat(b, 2)) / int(a);
        let lhs = dedekind_rademacher(b, a, &shifted, &half).unwrap()
            + sawtooth(&((int(binv * n) + &half) / int(a))) / int(2);
        prop_assert_eq!(lhs, -lam.clone());
        let z = lambda_sum_numeric(b, a, n).unwrap();
        prop_assert!((z.re - to_f64(&lam)).abs() < 1e-9 && z.im.abs() < 1e-9);
    }

    #[test]
    fn lens_conjugation_and_closed_form((b, a) in coprime_pair(40), u in 0i64..40) {
        let u = u % a;
        prop_assert_eq!(lens_delta_raw(a, b, u).unwrap(), lens_delta_raw(a, b, -1 - b - u).unwrap());
        prop_assert_eq!(lens_delta_raw(a, 1, u).unwrap(), lens_delta_closed_b1(a, u));
    }

    #[test]
    fn normalize_preserves_l(s in raw_seifert(4, 12)) {
        let n = s.normalize();
        prop_assert!(n.is_normalized());
        prop_assert_eq!(degree_l(&s), degree_l(&n));
        prop_assert_eq!(n.normalize(), n);
    }

    #[test]
    fn h1_is_four_times_product(s in normalized(5, 20)) {
        prop_assert_eq!(h1_order(&s), BigInt::from(4u64 * s.order_product()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn enumeration_shape(s in normalized(3, 7)) {
        let all: Vec<_> = enumerate_spinc(&s).collect();
        prop_assert_eq!(all.len() as u64, 4 * s.order_product());
        let mut seen: HashMap<(Vec<i64>, i64), Vec<Tau>> = HashMap::new();
        for x in &all {
            prop_assert!(check_conditions(&x.cls, x.m, &s));
            prop_assert!(desing_degree(&x.cls).is_ok());
            seen.entry((x.cls.gammas(), x.m)).or_default().push(x.tau);
        }
        prop_assert!(seen.values().all(|t| t == &vec![Tau::Plus, Tau::Minus]));
        prop_assert_eq!(all.iter().filter(|x| x.m == 0).count(), all.len() / 2);
    }

    #[test]
    fn delta_routes_agree(s in normalized(2, 9)) {
        for x in enumerate_spinc(&s) {
            prop_assert_eq!(eta_f0(&x, &s).unwrap(), eta_f0_raw(&x, &s).unwrap());
            prop_assert_eq!(delta_via_n(&x, &s, &PlusFirst).unwrap(), delta(&x, &s, &PlusFirst).unwrap());
            prop_assert_eq!(delta_via_n(&x, &s, &Unresolved).unwrap(), delta(&x, &s, &Unresolved).unwrap());
        }
    }

    #[test]
    fn tau_pairs_straddle_the_midpoint(s in normalized(3, 6)) {
        for cls in trivial_holonomy_classes(&s) {
            let (lo, hi) = delta_pair(&cls, &s).unwrap();
            prop_assert_eq!(&hi - &lo, rat(1, 2));
            let x = enumerate_spinc(&s).find(|y| y.m == 0 && y.cls == cls).unwrap();
            let a = delta(&x, &s, &PlusFirst).unwrap().exact().cloned().unwrap();
            let b = delta(&x.with_tau(Tau::Minus), &s, &PlusFirst).unwrap().exact().cloned().unwrap();
            prop_assert_eq!(a + b, lo + hi);
        }
    }

    #[test]
    fn multiset_ignores_arm_order(s in normalized(3, 7), seed in 0usize..6) {
        let mut t = s.clone();
        t.arms.rotate_left(seed % s.arms.len().max(1));
        if seed % 2 == 1 {
            t.arms.reverse();
        }
        let m = delta_multiset(&s);
        prop_assert_eq!(&m, &delta_multiset(&t));
        prop_assert_eq!(m.values().sum::<usize>() as u64, 4 * s.order_product());
    }

    #[test]
    fn continued_fraction_round_trip((b, a) in coprime_pair(300)) {
        let b = b.rem_euclid(a);
        prop_assume!(a >= 2 && b > 0);
        let chain = neg_cont_frac(a, b).unwrap();
        prop_assert!(chain.iter().all(|&d| d >= 2));
        prop_assert_eq!(eval_neg_cont_frac(&chain), rat(a, b));
        let lat = PlumbingGraph { central_weight: -2, arms: vec![chain.clone()] }.to_lattice();
        let idx: Vec<usize> = (1..lat.dim()).collect();
        prop_assert!(is_negative_definite(&lat.sub_block(&idx)));
    }

    #[test]
    fn signature_relation(s in normalized(4, 10)) {
        prop_assert!(sigma_relation_check(&s));
    }

    #[test]
    fn signature_is_congruence_invariant(s in normalized(3, 8), rot in 0usize..20) {
        let l = star_lattice_double(&s);
        let n = l.dim();
        let perm: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
        let q: Vec<Vec<i64>> = perm.iter().map(|&i| perm.iter().map(|&j| l.q[i][j]).collect()).collect();
        prop_assert_eq!(lattice_signature(&IntLattice::new(q).unwrap()), lattice_signature(&l));
    }

    #[test]
    fn signature_of_diagonal(d in prop::collection::vec(-5i64..5, 0..8)) {
        let n = d.len();
        let q: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect()).collect();
        let want: i64 = d.iter().map(|x| x.signum()).sum();
        prop_assert_eq!(lattice_signature(&IntLattice::new(q).unwrap()), want);
    }
}

#[test]
fn desingularized_degree_of_canonical_class_is_integral() {
    let s: SeifertData = "1;(2,1),(2,1)".parse().unwrap();
    for x in enumerate_spinc(&s) {
        let d = desing_degree(&x.cls).unwrap();
        if x.m == 0 {
            assert_eq!(d, BigInt::from(-1));
        } else {
            // Here δ_i = γ_i, so each arm contributes γ_i/2 twice.
            assert_eq!(x.cls.gammas(), x.cls.deltas());
            assert_eq!(d, BigInt::from(-x.cls.gammas().iter().sum::<i64>()));
        }
    }
}
