use dld_core::dynamics::{
    check_constant_difference, classify, construct_fixed, construct_period2, orbit, orbit_with, Classification,
    OrbitEnd, OrbitOptions, OrbitReport,
};
use dld_core::number::{integer, rational};
use dld_core::random::{random_function, RingBounds};
use dld_core::{CanonicalFunction, GaussianRational, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn g(re: Rational, im: Rational) -> GaussianRational {
    GaussianRational::new(re, im)
}

fn a_values() -> Vec<GaussianRational> {
    vec![
        GaussianRational::from_int(1),
        GaussianRational::from_int(-1),
        GaussianRational::from_int(2),
        GaussianRational::from_int(-2),
        GaussianRational::real(rational(1, 2)),
        GaussianRational::real(rational(3, 5)),
        g(integer(1), integer(1)),
        g(rational(-2, 3), rational(1, 7)),
    ]
}

fn c_values() -> Vec<Rational> {
    vec![
        integer(1),
        integer(-1),
        integer(2),
        integer(-2),
        rational(1, 2),
        rational(-1, 2),
        rational(3, 4),
        rational(-5, 3),
    ]
}

fn grid() -> impl Iterator<Item = (GaussianRational, Rational)> {
    a_values().into_iter().flat_map(|a| c_values().into_iter().map(move |c| (a.clone(), c)))
}

fn f(s: &str) -> CanonicalFunction {
    s.parse().unwrap()
}

#[test]
fn constructed_pairs_swap_under_a() {
    for (a, c) in grid() {
        let pair = construct_period2(&a, &c).unwrap();
        assert_eq!(pair.first.apply_a().unwrap(), pair.second, "a={a} c={c}");
        assert_eq!(pair.second.apply_a().unwrap(), pair.first, "a={a} c={c}");
        assert_ne!(pair.first, pair.second);
        assert_eq!((&pair.second - &pair.first).as_constant(), Some(GaussianRational::real(c.clone())));
        assert_eq!(check_constant_difference(&pair.first).unwrap(), Some(c));
    }
}

#[test]
fn classifier_recovers_parameters_in_both_orientations() {
    for (a, c) in grid() {
        let pair = construct_period2(&a, &c).unwrap();
        match classify(&pair.first).unwrap() {
            Classification::Period2 { a: got_a, c: got_c, partner } => {
                assert_eq!((&got_a, &got_c), (&a, &c));
                assert_eq!(partner, pair.second);
            }
            other => panic!("a={a} c={c}: {other:?}"),
        }
        match classify(&pair.second).unwrap() {
            Classification::Period2 { a: got_a, c: got_c, partner } => {
                assert_eq!(got_a, a.recip().unwrap());
                assert_eq!(got_c, -c.clone());
                assert_eq!(partner, pair.first);
            }
            other => panic!("a={a} c={c}: {other:?}"),
        }
    }
}

#[test]
fn fixed_family_is_fixed_and_recognised() {
    let values = [
        GaussianRational::from_int(0),
        GaussianRational::from_int(1),
        GaussianRational::from_int(5),
        GaussianRational::real(rational(-3, 2)),
        g(rational(1, 2), integer(1)),
    ];
    for a in values {
        let h = construct_fixed(&a).unwrap();
        assert_eq!(h.apply_a().unwrap(), h);
        assert!(matches!(classify(&h).unwrap(), Classification::Fixed { a: got } if got == a));
        assert_eq!(check_constant_difference(&h).unwrap(), None);
    }
}

#[test]
fn constants_are_never_fixed() {
    for k in [
        GaussianRational::from_int(1),
        GaussianRational::from_int(-3),
        GaussianRational::real(rational(2, 7)),
        GaussianRational::i(),
    ] {
        let h = CanonicalFunction::constant(k.clone());
        assert!(h.apply_a().unwrap().is_zero());
        assert!(matches!(classify(&h).unwrap(), Classification::Constant { k: got } if got == k));
    }
}

#[test]
fn logistic_orbit_is_preperiodic() {
    let report = orbit(&f("x/(1+x)"), 8).unwrap();
    assert_eq!((report.preperiod, report.period, report.truncated), (Some(1), Some(2), false));
    assert_eq!(report.iterates[1], f("1/(1+x)"));
    assert_eq!(report.iterates[2], f("-x/(1+x)"));
    assert_eq!(report.iterates[3], f("1/(1+x)"));
    assert!(matches!(classify(&report.iterates[0]).unwrap(), Classification::None));
}

fn assert_minimal(report: &OrbitReport) {
    let its = &report.iterates;
    match (report.preperiod, report.period) {
        (Some(k), Some(p)) => {
            assert_eq!(its.len(), k + p + 1);
            assert_eq!(its[k], its[k + p]);
            for j in 1..=k + p {
                for i in 0..j {
                    if (i, j) != (k, k + p) {
                        assert_ne!(its[i], its[j], "early repeat ({i}, {j})");
                    }
                }
            }
        }
        (None, None) => {
            let live = if matches!(report.end, OrbitEnd::ZeroIterate { .. }) { its.len() - 1 } else { its.len() };
            for j in 1..live {
                for i in 0..j {
                    assert_ne!(its[i], its[j]);
                }
            }
        }
        other => panic!("inconsistent report {other:?}"),
    }
}

#[test]
fn known_orbits_are_minimal() {
    for s in ["x/(1+x)", "1/(5-ln(x))", "x/(1-x)", "x^2", "7", "x*ln(x)", "-2/(x-2)"] {
        assert_minimal(&orbit(&f(s), 16).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_orbits_are_minimal(seed in any::<u64>()) {
        let b = RingBounds { max_terms: 2, max_abs_xexp: 2, max_xexp_denom: 1, max_lexp: 1, max_coeff: 3, complex: false };
        let h = random_function(&mut ChaCha8Rng::seed_from_u64(seed), &b);
        let report = orbit_with(&h, OrbitOptions { max_steps: 6, max_terms: 48 }).unwrap();
        prop_assert_eq!(report.truncated, report.period.is_none() && !matches!(report.end, OrbitEnd::ZeroIterate { .. }));
        assert_minimal(&report);
    }

    #[test]
    fn random_period2_parameters_round_trip(
        (ar, ai, cn, cd) in (-9i64..=9, -9i64..=9, -6i64..=6, 1i64..=5)
    ) {
        prop_assume!((ar, ai) != (0, 0) && cn != 0);
        let a = g(integer(ar), integer(ai));
        let c = rational(cn, cd);
        let pair = construct_period2(&a, &c).unwrap();
        let is_expected = matches!(classify(&pair.first).unwrap(),
            Classification::Period2 { a: ref x, c: ref y, .. } if *x == a && *y == c);
        prop_assert!(is_expected);
    }
}
