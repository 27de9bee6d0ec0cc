//! The exact game-tree evaluator as an oracle for the closed-form welfare expressions, and
//! Monte Carlo play as an oracle for both.

mod common;

use pbe_core::welfare::{welfare, welfare_closed_form};
use pbe_core::{
    build_profile_unchecked, certify, exact_expected_utilities, simulate, EquilibriumClass,
    ModelParams, WelfareSource,
};

fn random_point(rng: &mut rand_chacha::ChaCha8Rng, i: usize) -> Option<ModelParams> {
    let raw = if i % 2 == 0 {
        common::broad_raw(rng)
    } else {
        common::offset_raw(rng)
    };
    common::valid(raw)
}

#[test]
fn closed_form_welfare_matches_the_game_tree() {
    let mut rng = common::rng(404);
    let mut checked = [0usize; 2];
    let classes = [EquilibriumClass::Pecb, EquilibriumClass::NpeSf];
    let mut i = 0;
    while checked.iter().any(|&n| n < 1000) {
        i += 1;
        assert!(i < 200_000, "too few evaluable points: {checked:?}");
        let Some(p) = random_point(&mut rng, i) else {
            continue;
        };
        for (k, class) in classes.iter().enumerate() {
            let Ok(closed) = welfare_closed_form(*class, &p) else {
                continue;
            };
            let profile = build_profile_unchecked(*class, &p).unwrap();
            let exact = exact_expected_utilities(&profile, &p);
            let scale = 1.0 + exact.voter_welfare.abs();
            for (a, b, what) in [
                (closed.eu_total, exact.voter_welfare, "total"),
                (closed.eu_given_good, exact.voter_welfare_given_good, "good"),
                (closed.eu_given_bad, exact.voter_welfare_given_bad, "bad"),
            ] {
                assert!(
                    (a - b).abs() <= 1e-12 * scale,
                    "{class} {what}: closed {a} vs tree {b} at {:?}",
                    p.to_raw()
                );
            }
            checked[k] += 1;
        }
    }
}

#[test]
fn welfare_routes_to_the_documented_source() {
    let p = common::unit_config(0.5, 0.5, 0.5, 0.5, 1.0);
    assert_eq!(
        welfare(EquilibriumClass::Pecb, &p).unwrap().source,
        WelfareSource::ClosedForm
    );
    assert_eq!(
        welfare(EquilibriumClass::Pepb, &p).unwrap().source,
        WelfareSource::GameTree
    );
    for l in [0.0, 1.0] {
        let at = p.with_lambda(l).unwrap();
        assert_eq!(
            welfare(EquilibriumClass::Pecb, &at).unwrap().source,
            WelfareSource::Benchmark
        );
    }
}

#[test]
fn monte_carlo_agrees_with_the_oracle() {
    let n = 1_000_000;
    let mut rng = common::rng(77);
    let mut points: Vec<(EquilibriumClass, ModelParams)> = Vec::new();
    let mut i = 0;
    // Certified points of both closed-form classes plus the remaining classes.
    let quota = [4usize, 2, 4, 1, 1];
    let mut have = [0usize; 5];
    while have.iter().zip(quota).any(|(h, q)| *h < q) {
        i += 1;
        assert!(
            i < 400_000,
            "could not fill the Monte Carlo quota: {have:?}"
        );
        let raw = if i % 3 == 2 {
            common::subversive_raw(&mut rng)
        } else {
            common::broad_raw(&mut rng)
        };
        let Some(p) = common::valid(raw) else {
            continue;
        };
        for (k, class) in EquilibriumClass::ALL.iter().enumerate() {
            if have[k] < quota[k] && certify(*class, &p).map(|c| c.verdict).unwrap_or(false) {
                points.push((*class, p));
                have[k] += 1;
            }
        }
    }
    assert!(points.len() >= 10);
    for (k, (class, p)) in points.iter().enumerate() {
        let profile = build_profile_unchecked(*class, p).unwrap();
        let exact = exact_expected_utilities(&profile, p);
        let sim = simulate(&profile, p, n, 9_000 + k as u64).unwrap();
        let beliefs = certify(*class, p).unwrap().beliefs;
        let checks = [
            ("voter", sim.voter, exact.voter_welfare),
            ("politician", sim.politician, exact.politician_ex_ante),
            ("bureaucrat", sim.bureaucrat, exact.bureaucrat_ex_ante),
            ("prob_x", sim.prob_x, exact.prob_x),
            ("posterior_x", sim.posterior_x, beliefs.pi_v_x),
            ("posterior_y", sim.posterior_y, beliefs.pi_v_y),
            ("eta", sim.eta, exact.eta),
            ("zeta", sim.zeta, exact.zeta),
        ];
        for (what, est, target) in checks {
            assert!(
                est.within(target, 3.0),
                "{class} {what}: {} ± {} vs {target} (z = {:.2}) at {:?}",
                est.mean,
                est.std_error,
                est.z_score(target),
                p.to_raw()
            );
        }
        if let Ok(closed) = welfare_closed_form(*class, p) {
            assert!(sim.voter.within(closed.eu_total, 3.0));
        }
    }
}

#[test]
fn beliefs_match_the_evaluator_posteriors() {
    let mut rng = common::rng(5);
    let mut checked = 0;
    for i in 0..100_000 {
        if checked >= 500 {
            break;
        }
        let Some(p) = random_point(&mut rng, i) else {
            continue;
        };
        for class in EquilibriumClass::ALL {
            let Ok(cert) = certify(class, &p) else {
                continue;
            };
            if !cert.verdict {
                continue;
            }
            let profile = build_profile_unchecked(class, &p).unwrap();
            let exact = exact_expected_utilities(&profile, &p);
            assert!((exact.posterior_x - cert.beliefs.pi_v_x).abs() < 1e-12);
            assert!((exact.posterior_y - cert.beliefs.pi_v_y).abs() < 1e-12);
            checked += 1;
        }
    }
    assert!(checked >= 500);
}

#[test]
fn simulation_is_reproducible_and_flags_single_plays() {
    let p = common::unit_config(0.5, 0.5, 0.5, 0.5, 1.0);
    let profile = build_profile_unchecked(EquilibriumClass::Pecb, &p).unwrap();
    let a = simulate(&profile, &p, 20_000, 42).unwrap();
    let b = simulate(&profile, &p, 20_000, 42).unwrap();
    assert_eq!(a, b);
    let c = simulate(&profile, &p, 20_000, 43).unwrap();
    assert_ne!(a.voter.mean, c.voter.mean);
    let one = simulate(&profile, &p, 1, 42).unwrap();
    assert!(one.degenerate_std_errors);
    assert!(one.voter.std_error.is_nan());
}
