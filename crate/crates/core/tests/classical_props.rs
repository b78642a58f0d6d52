//! Classical scenarios: allergy bookkeeping and the factorizable model.

use ebbi_core::classical::*;
use proptest::prelude::*;

#[test]
fn table_one_values() {
    let s = AllergyScenario::table_one();
    for n in [1, 7, 50] {
        assert_eq!(s.gamma_triples(n, DaySchedule::Alternating).unwrap(), -1.0);
        assert_eq!(s.gamma_pairs(n, DaySchedule::Random { seed: 3 }).unwrap(), -3.0);
    }
    assert!(AllergyScenario::table_one().gamma_pairs(0, DaySchedule::Alternating).is_err());
    assert!(Birthplace::parse("d").is_err());
}

#[test]
fn sampling_is_seed_deterministic() {
    let m = FactorizableModel::new(MuKind::Uniform);
    let a = sample_pair(&m, 0.1, 0.9, 5, 40_000).unwrap();
    let b = sample_pair(&m, 0.1, 0.9, 5, 40_000).unwrap();
    let c = sample_pair(&m, 0.1, 0.9, 6, 40_000).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn equal_settings_examples() {
    let m = FactorizableModel::new(MuKind::Uniform);
    let e = sample_pair(&m, 0.0, 0.0, 8, 400_000).unwrap().correlation(1, 2).unwrap().value;
    // E[S|φ] = cos φ at both stations, so E = <cos²φ> = 1/2.
    assert!((e - 0.5).abs() < 0.01);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// A scenario in which every patient has a definite value in every city
    /// yields triples, so the triple average cannot drop below -1.
    #[test]
    fn any_definite_scenario_has_gamma_triples_at_least_minus_one(
        bits in prop::collection::vec(prop::bool::ANY, 18),
        n in 1usize..50,
    ) {
        let s = AllergyScenario::from_fn(|o, city, odd| {
            let k = (o as usize) * 6 + (city - 1) * 2 + usize::from(odd);
            if bits[k] { 1 } else { -1 }
        }).unwrap();
        prop_assert!(s.gamma_triples(n, DaySchedule::Alternating).unwrap() >= -1.0);
    }

    #[test]
    fn analytic_correlations_are_in_range(a in -10.0f64..10.0, b in -10.0f64..10.0) {
        for mu in [MuKind::Uniform, MuKind::DeltaEqual, MuKind::DeltaOpposite] {
            let e = analytic_correlation(&FactorizableModel::new(mu), a, b);
            prop_assert!((-1.0..=1.0).contains(&e));
        }
    }

    #[test]
    fn equal_thresholds_agree_at_equal_settings(a in -4.0f64..4.0, seed in 0u64..1000) {
        let d = sample_pair(&FactorizableModel::new(MuKind::DeltaEqual), a, a, seed, 2000).unwrap();
        prop_assert_eq!(d.correlation(1, 2).unwrap().value, 1.0);
    }
}
