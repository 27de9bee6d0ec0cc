//! Shared fixtures for the benchmark suite: one parameter point at which each equilibrium
//! class is certified.

use pbe_core::{EquilibriumClass, ModelParams, RawParams};

fn point(rho: f64, pi: f64, beta: f64, lambda: f64, e: f64, v_xx: f64) -> ModelParams {
    RawParams {
        rho,
        pi,
        beta,
        lambda,
        office_rent: e,
        v_xx,
        ..RawParams::default()
    }
    .validate()
    .expect("fixture parameters are valid")
}

/// A certified parameter point for `class`.
pub fn fixture(class: EquilibriumClass) -> ModelParams {
    match class {
        EquilibriumClass::Pecb => point(0.5, 0.5, 0.5, 0.3, 1.0, 1.0),
        EquilibriumClass::Pepb => point(0.5, 0.5, 0.5, 0.4, 1.0, 500.0),
        EquilibriumClass::NpeSf => point(0.85, 0.7, 0.9, 0.6, 0.85, 1.0),
        EquilibriumClass::NpeFsv => point(0.9, 0.7, 0.5, 0.65, -1.0, 20.0),
        EquilibriumClass::NpeAsv => point(0.9, 0.1, 0.9, 0.55, 0.5, 20.0),
    }
}

/// Every class with its fixture.
pub fn fixtures() -> Vec<(EquilibriumClass, ModelParams)> {
    EquilibriumClass::ALL
        .into_iter()
        .map(|c| (c, fixture(c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use pbe_core::certify;

    #[test]
    fn every_fixture_is_certified() {
        for (class, p) in fixtures() {
            assert!(certify(class, &p).unwrap().verdict, "{class}");
        }
    }
}
