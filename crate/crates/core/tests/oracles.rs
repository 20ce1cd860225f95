mod common;

use common::{brute_tribonacci, newton_lambdas, random_spec, rng, weights};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;
use trisum::identities::{
    default_grid, first_counterexample, rhs_terms, IdentityId, ParamAssignment, RhsMutation,
};
use trisum::linrec::{
    gen_fun, partial_sum_closed, partial_sum_direct, second_order_binomial_sums,
    second_order_weighted_sums, series_expand, third_order_double_binomial_sums,
};
use trisum::rational::parse_rational;
use trisum::triboncore::{lambdas, trib, trib_addition, trib_fast, trib_lucas};
use trisum::{Error, Rational};

#[test]
fn lambdas_match_newton_identities() {
    for t in 0..=40 {
        let (l1, l2, l3) = newton_lambdas(t);
        let got = lambdas(t as i64).unwrap();
        assert_eq!(
            (got.lambda1, got.lambda2, got.lambda3),
            (l1, l2, l3),
            "t={t}"
        );
    }
}

#[test]
fn negative_stride_lambdas_swap_roles() {
    for t in 1..=30usize {
        let (l1, l2, _) = newton_lambdas(t);
        let got = lambdas(-(t as i64)).unwrap();
        assert_eq!(got.lambda1, -l2);
        assert_eq!(got.lambda2, -l1);
        assert_eq!(got.lambda3, BigInt::from(1));
    }
}

#[test]
fn lucas_numbers_are_power_sums() {
    for t in 0..=60usize {
        assert_eq!(trib_lucas(t as i64).unwrap(), newton_lambdas(t).0);
    }
}

#[test]
fn decimation_with_oracle_coefficients() {
    let brute = brute_tribonacci(-60, 260);
    for t in 1..=12i64 {
        let (l1, l2, l3) = newton_lambdas(t as usize);
        for m in 3..=20 {
            for r in -10..=10 {
                let lhs = brute(t * m + r);
                let rhs = &l1 * brute(t * (m - 1) + r)
                    + &l2 * brute(t * (m - 2) + r)
                    + &l3 * brute(t * (m - 3) + r);
                assert_eq!(lhs, rhs, "t={t} m={m} r={r}");
            }
        }
    }
}

#[test]
fn iterative_and_matrix_paths_match_brute_force() {
    let brute = brute_tribonacci(-400, 400);
    for m in -400..=400 {
        assert_eq!(trib(m).unwrap(), brute(m), "trib({m})");
        assert_eq!(trib_fast(m).unwrap(), brute(m), "trib_fast({m})");
    }
}

#[test]
fn ap_series_matches_sequence() {
    for t in 1..=6 {
        for r in -5..=5 {
            let f = trisum::identities::ap_genfun(t, r).unwrap();
            let s = series_expand(&f, 32).unwrap();
            for (j, c) in s.coefficients.iter().enumerate() {
                assert_eq!(*c, Rational::from_integer(trib(t * j as i64 + r).unwrap()));
            }
        }
    }
}

#[test]
fn random_partial_sums_and_series() {
    let mut rng = rng(0x7269_6273);
    let mut checked = 0;
    for _ in 0..100 {
        let order = rng.gen_range(1..=4);
        let spec = random_spec(&mut rng, order);
        let f = gen_fun(&spec).unwrap();
        let series = series_expand(&f, 32).unwrap();
        assert_eq!(series.coefficients, spec.values(0, 32).unwrap());
        for x in weights() {
            for k in 0..=12u64 {
                let direct = partial_sum_direct(&spec, &x, k).unwrap();
                match partial_sum_closed(&spec, &x, k) {
                    Ok(closed) => {
                        assert_eq!(closed, direct, "{spec:?} x={x} k={k}");
                        checked += 1;
                    }
                    Err(Error::Singular(_)) => {}
                    Err(e) => panic!("unexpected {e}"),
                }
            }
        }
    }
    assert!(checked > 5000, "only {checked} nonsingular cases");
}

#[test]
fn random_second_order_lemmas() {
    let mut rng = rng(2);
    for _ in 0..100 {
        let spec = random_spec(&mut rng, 2);
        for variant in 1..=3 {
            for m in -5..=5 {
                for k in 0..=6 {
                    let w = second_order_weighted_sums(&spec, variant, m, k).unwrap();
                    assert!(w.holds(), "weighted v{variant} m={m} k={k} {spec:?}");
                    let b = second_order_binomial_sums(&spec, variant, m, k).unwrap();
                    assert!(b.holds(), "binomial v{variant} m={m} k={k} {spec:?}");
                }
            }
        }
    }
}

#[test]
fn random_third_order_lemmas() {
    let mut rng = rng(3);
    for _ in 0..100 {
        let spec = random_spec(&mut rng, 3);
        for variant in 1..=6 {
            for m in -4..=4 {
                for k in 0..=5 {
                    let d = third_order_double_binomial_sums(&spec, variant, m, k).unwrap();
                    assert!(d.holds(), "v{variant} m={m} k={k} {spec:?}");
                }
            }
        }
    }
}

#[test]
fn lemmas_reject_wrong_order() {
    let mut rng = rng(4);
    let spec = random_spec(&mut rng, 3);
    assert!(matches!(
        second_order_binomial_sums(&spec, 1, 0, 1),
        Err(Error::Domain(_))
    ));
    let spec = random_spec(&mut rng, 2);
    assert!(matches!(
        third_order_double_binomial_sums(&spec, 1, 0, 1),
        Err(Error::Domain(_))
    ));
}

fn first_checkable(id: IdentityId) -> ParamAssignment {
    default_grid(id)
        .assignments(id)
        .unwrap()
        .into_iter()
        .find(|p| rhs_terms(id, p).is_ok())
        .expect("grid has a defined point")
}

#[test]
fn every_rhs_term_is_load_bearing() {
    for id in IdentityId::ALL {
        let terms = rhs_terms(id, &first_checkable(id)).unwrap().len();
        assert!(terms > 0);
        for term in 0..terms {
            let mutation = RhsMutation { identity: id, term };
            let found = first_counterexample(id, default_grid(id), Some(mutation)).unwrap();
            assert!(found.is_some(), "negating {id} term {term} went unnoticed");
        }
    }
}

#[test]
fn unmutated_identities_hold_on_small_grids() {
    for id in IdentityId::ALL {
        assert!(
            first_counterexample(id, default_grid(id), None)
                .unwrap()
                .is_none(),
            "{id}"
        );
    }
}

proptest! {
    #[test]
    fn addition_formula(m in -3000i64..3000, r in -3000i64..3000) {
        prop_assert_eq!(trib_addition(m, r).unwrap(), trib(m + r).unwrap());
    }

    #[test]
    fn fast_path_agrees(m in -20_000i64..20_000) {
        prop_assert_eq!(trib_fast(m).unwrap(), trib(m).unwrap());
    }

    #[test]
    fn rational_text_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let q = Rational::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn spec_json_round_trip(seed in any::<u64>(), order in 1usize..=4) {
        let spec = random_spec(&mut rng(seed), order);
        let text = serde_json::to_string(&spec.to_json()).unwrap();
        let back = trisum::linrec::RecurrenceSpec::from_json_str(&text).unwrap();
        prop_assert_eq!(back.values(-6, 12).unwrap(), spec.values(-6, 12).unwrap());
    }
}

#[test]
fn negative_strides_in_progression_sums() {
    use trisum::identities::ap_sum_undivided;
    for t in -5..=-1 {
        for r in -4..=4 {
            let s = series_expand(&trisum::identities::ap_genfun(t, r).unwrap(), 20).unwrap();
            for (j, c) in s.coefficients.iter().enumerate() {
                assert_eq!(
                    *c,
                    Rational::from_integer(trib(t * j as i64 + r).unwrap()),
                    "t={t} r={r} j={j}"
                );
            }
            for x in weights() {
                for k in 0..=8 {
                    assert!(
                        ap_sum_undivided(t, r, &x, k).unwrap().holds(),
                        "t={t} r={r} x={x} k={k}"
                    );
                }
            }
        }
    }
}
