//! Seeded parameter samplers shared by the integration tests.

#![allow(dead_code)]

pub mod violations;

use pbe_core::{ModelParams, RawParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A broad draw: interior probabilities, office rents of either sign, payoff asymmetries from
/// mild to extreme and rent supports of different widths.
pub fn broad_raw(rng: &mut ChaCha8Rng) -> RawParams {
    RawParams {
        rho: rng.random_range(0.02..0.98),
        pi: rng.random_range(0.02..0.98),
        beta: rng.random_range(0.02..0.98),
        lambda: rng.random_range(0.01..0.99),
        delta: if rng.random_bool(0.5) {
            1.0
        } else {
            rng.random_range(0.5..1.0)
        },
        office_rent: rng.random_range(-3.0..2.0),
        v_xx: match rng.random_range(0..3) {
            0 => rng.random_range(0.2..5.0),
            1 => rng.random_range(1.0..80.0),
            _ => 500.0,
        },
        v_xy: 0.0,
        v_yx: 0.0,
        v_yy: rng.random_range(0.5..2.0),
        rent_p1_upper: rng.random_range(0.1..4.0),
        rent_p2_upper: rng.random_range(0.1..4.0),
        rent_b1_upper: rng.random_range(0.1..4.0),
        rent_b2_upper: rng.random_range(0.1..4.0),
    }
}

/// Draws concentrated where the forcing-subversive class exists: office rents negative
/// enough for non-pandering despite a large state-x mismatch cost, and moderate influence.
pub fn subversive_raw(rng: &mut ChaCha8Rng) -> RawParams {
    RawParams {
        rho: rng.random_range(0.6..0.98),
        pi: rng.random_range(0.05..0.95),
        beta: rng.random_range(0.1..0.9),
        lambda: rng.random_range(0.5..0.75),
        delta: 1.0,
        office_rent: rng.random_range(-3.0..-0.5),
        v_xx: rng.random_range(10.0..80.0),
        v_xy: 0.0,
        v_yx: 0.0,
        v_yy: rng.random_range(0.5..2.0),
        rent_p1_upper: rng.random_range(0.1..4.0),
        rent_p2_upper: rng.random_range(0.1..4.0),
        rent_b1_upper: rng.random_range(0.1..4.0),
        rent_b2_upper: rng.random_range(0.1..4.0),
    }
}

/// Draws with general (offset) payoffs and positive office rents.
pub fn offset_raw(rng: &mut ChaCha8Rng) -> RawParams {
    let v_yx = rng.random_range(-1.0..1.0);
    let v_xy = rng.random_range(-1.0..1.0);
    RawParams {
        rho: rng.random_range(0.05..0.95),
        pi: rng.random_range(0.05..0.95),
        beta: rng.random_range(0.05..0.95),
        lambda: rng.random_range(0.02..0.98),
        delta: rng.random_range(0.3..1.0),
        office_rent: rng.random_range(0.0..2.0),
        v_xx: v_yx + rng.random_range(0.1..3.0),
        v_xy,
        v_yx,
        v_yy: v_xy + rng.random_range(0.1..3.0),
        rent_p1_upper: rng.random_range(0.2..4.0),
        rent_p2_upper: rng.random_range(0.2..4.0),
        rent_b1_upper: rng.random_range(0.2..4.0),
        rent_b2_upper: rng.random_range(0.2..4.0),
    }
}

/// The unit configuration: `δ = 1`, unit matching payoffs, `U[0, 2]` rents.
pub fn unit_config(rho: f64, pi: f64, beta: f64, lambda: f64, e: f64) -> ModelParams {
    RawParams {
        rho,
        pi,
        beta,
        lambda,
        office_rent: e,
        ..RawParams::default()
    }
    .validate()
    .expect("valid unit configuration")
}

/// Validate, discarding invalid draws.
pub fn valid(raw: RawParams) -> Option<ModelParams> {
    raw.validate().ok()
}
