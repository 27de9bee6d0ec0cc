//! Properties of parameter validation, rent distributions and the config schema.

use pbe_core::{mismatch_ratio, ModelError, RawParams, RentSpec};
use proptest::prelude::*;

fn raw_strategy() -> impl Strategy<Value = RawParams> {
    (
        (
            0.001f64..0.999,
            0.001f64..0.999,
            0.001f64..0.999,
            0.0f64..=1.0,
        ),
        (0.01f64..=1.0, -5.0f64..5.0),
        (-3.0f64..3.0, -3.0f64..3.0, 0.001f64..10.0, 0.001f64..10.0),
        (0.0f64..10.0, 0.0f64..10.0, 0.0f64..10.0, 0.0f64..10.0),
    )
        .prop_map(
            |((rho, pi, beta, lambda), (delta, e), (v_yx, v_xy, dx, dy), r)| RawParams {
                rho,
                pi,
                beta,
                lambda,
                delta,
                office_rent: e,
                v_xx: v_yx + dx,
                v_xy,
                v_yx,
                v_yy: v_xy + dy,
                rent_p1_upper: r.0,
                rent_p2_upper: r.1,
                rent_b1_upper: r.2,
                rent_b2_upper: r.3,
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn valid_bundles_have_positive_mismatch_ratio(raw in raw_strategy()) {
        let p = raw.validate().unwrap();
        prop_assert!(mismatch_ratio(p.payoffs()) > 0.0);
        prop_assert!(p.mismatch_ratio() > 0.0);
    }

    #[test]
    fn cdf_inverts_quantile(upper in 0.001f64..100.0, q in 0.0f64..=1.0) {
        let spec = RentSpec::uniform(upper);
        let r = spec.quantile(q).unwrap();
        prop_assert!((spec.cdf(r) - q).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn cdf_is_a_distribution_function(upper in 0.001f64..100.0) {
        let spec = RentSpec::uniform(upper);
        prop_assert_eq!(spec.cdf(0.0), 0.0);
        prop_assert_eq!(spec.cdf(upper), 1.0);
        prop_assert!((spec.mean() - upper / 2.0).abs() <= f64::EPSILON * upper);
        let mut last = 0.0;
        for i in 0..=1000 {
            let c = spec.cdf(upper * i as f64 / 1000.0);
            prop_assert!(c >= last);
            last = c;
        }
    }

    #[test]
    fn toml_round_trip_is_exact(raw in raw_strategy()) {
        let text = raw.to_toml_string();
        let back = RawParams::from_toml_str(&text).unwrap();
        prop_assert_eq!(back, raw);
    }

    #[test]
    fn overrides_round_trip_through_get(raw in raw_strategy(), value in -10.0f64..10.0) {
        for key in RawParams::KEYS {
            let mut r = raw;
            r.apply_override(&format!("{key}={value:?}")).unwrap();
            prop_assert_eq!(r.get(key).unwrap(), value);
        }
    }

    #[test]
    fn out_of_range_probabilities_are_rejected(bad in prop_oneof![-5.0f64..0.0, 1.0f64..5.0]) {
        for key in ["rho", "pi", "beta"] {
            let mut raw = RawParams::default();
            raw.set(key, bad).unwrap();
            let err = raw.validate().unwrap_err();
            prop_assert!(err.is_validation(), "{}", err);
        }
    }
}

#[test]
fn spec_examples() {
    assert!(RawParams::default().validate().is_ok());

    let flat = RawParams {
        v_xx: 0.0,
        ..RawParams::default()
    };
    let err = flat.validate().unwrap_err();
    assert!(err.to_string().contains("payoff monotonicity"), "{err}");

    let steep = RawParams {
        lambda: 1.2,
        ..RawParams::default()
    };
    let err = steep.validate().unwrap_err();
    assert!(err.to_string().contains("probability range"), "{err}");

    let negative_rent = RawParams {
        rent_b1_upper: -1.0,
        ..RawParams::default()
    };
    assert!(negative_rent.validate().is_err());

    let spec = RentSpec::uniform(2.0);
    assert_eq!(spec.cdf(1.0), 0.5);
    assert!((spec.cdf(0.2975) - 0.14875).abs() < 1e-15);
    assert_eq!(spec.quantile(0.5).unwrap(), 1.0);
    assert_eq!(spec.quantile(1.5), Err(ModelError::QuantileRange(1.5)));
}

#[test]
fn empirical_cdf_matches_closed_form() {
    use rand::{Rng, SeedableRng};
    let spec = RentSpec::uniform(2.0);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let n = 1_000_000;
    let hits = (0..n)
        .filter(|_| spec.sample_from_unit(rng.random::<f64>()) <= 0.2975)
        .count();
    let p = spec.cdf(0.2975);
    let se = (p * (1.0 - p) / n as f64).sqrt();
    assert!((hits as f64 / n as f64 - p).abs() < 4.0 * se);
}

#[test]
fn mismatch_ratio_examples() {
    let unit = RawParams::default().validate().unwrap();
    assert_eq!(unit.mismatch_ratio(), 1.0);
    let steep = RawParams {
        v_xx: 500.0,
        ..RawParams::default()
    }
    .validate()
    .unwrap();
    assert_eq!(steep.mismatch_ratio(), 1.0 / 500.0);
    let offset = RawParams {
        v_xx: 3.5,
        v_yx: 1.5,
        v_yy: 0.25,
        v_xy: -1.75,
        ..RawParams::default()
    }
    .validate()
    .unwrap();
    assert_eq!(offset.mismatch_ratio(), 1.0);
}
