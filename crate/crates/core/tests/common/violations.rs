//! The single-condition violations whose audit failure location is predicted, and the
//! sampler used to find them.

use pbe_core::beliefs::pandering_mixing_bound;
use pbe_core::simulator::Player;
use pbe_core::{certify, thresholds, EquilibriumClass, ModelParams, Policy, State, Type};

/// Rent quantile points per rent-bearing decision in the audits.
pub const GRID: usize = 101;

/// A mixture of broad draws and draws where the subversive classes exist.
pub fn draw(rng: &mut rand_chacha::ChaCha8Rng, i: usize) -> Option<ModelParams> {
    let raw = match i % 3 {
        0 | 1 => super::broad_raw(rng),
        _ => super::subversive_raw(rng),
    };
    super::valid(raw)
}

/// Where a single failing condition is expected to show up in the audit.
#[derive(Clone, Copy)]
pub struct Prediction {
    pub class: EquilibriumClass,
    pub condition: &'static str,
    pub player: Player,
    pub player_type: Option<Type>,
    pub state: Option<State>,
    pub observed: Option<Policy>,
    /// Extra filter on the violating point, for conditions with several parts.
    pub part: fn(&ModelParams) -> bool,
}

fn any(_: &ModelParams) -> bool {
    true
}

/// ψ below Ψ̃: subversion no longer outweighs the policy loss for good politicians in y.
fn fsv_window_lower(p: &ModelParams) -> bool {
    let t = thresholds(EquilibriumClass::NpeFsv, p).unwrap();
    let m = certify(EquilibriumClass::NpeFsv, p)
        .unwrap()
        .beliefs
        .mixing();
    m < t.psi_tilde
}

/// ψ at or above `(1−λ)/(λ(1−β))`: proposing x in state x stops paying off.
fn asv_bound_pandering_part(p: &ModelParams) -> bool {
    let m = certify(EquilibriumClass::NpeAsv, p)
        .unwrap()
        .beliefs
        .mixing();
    m >= pandering_mixing_bound(p)
}

fn pol(class: EquilibriumClass, condition: &'static str, state: State) -> Prediction {
    Prediction {
        class,
        condition,
        player: Player::Politician,
        player_type: Some(Type::Good),
        state: Some(state),
        observed: None,
        part: any,
    }
}

fn bur(class: EquilibriumClass, condition: &'static str, observed: Policy) -> Prediction {
    Prediction {
        class,
        condition,
        player: Player::Bureaucrat,
        player_type: Some(Type::Good),
        state: Some(State::Y),
        observed: Some(observed),
        part: any,
    }
}

fn voter(class: EquilibriumClass, condition: &'static str) -> Prediction {
    Prediction {
        class,
        condition,
        player: Player::Voter,
        player_type: None,
        state: None,
        observed: None,
        part: any,
    }
}

pub fn predictions() -> Vec<Prediction> {
    use EquilibriumClass::*;
    vec![
        pol(Pecb, "office_rent", State::Y),
        bur(Pecb, "good_bureaucrat", Policy::X),
        voter(Pecb, "rent_support"),
        pol(Pecb, "mixing_bound", State::X),
        pol(Pepb, "office_rent", State::Y),
        bur(Pepb, "good_bureaucrat", Policy::X),
        pol(Pepb, "mixing_bound", State::X),
        pol(NpeSf, "office_rent", State::Y),
        bur(NpeSf, "good_bureaucrat", Policy::Y),
        voter(NpeSf, "mixing_bound"),
        pol(NpeSf, "reelection_value", State::X),
        pol(NpeFsv, "office_rent", State::Y),
        bur(NpeFsv, "good_bureaucrat", Policy::Y),
        Prediction {
            part: fsv_window_lower,
            ..pol(NpeFsv, "psi_window", State::Y)
        },
        pol(NpeAsv, "office_rent", State::Y),
        bur(NpeAsv, "good_bureaucrat", Policy::Y),
        pol(NpeAsv, "psi_below_tilde", State::Y),
        Prediction {
            part: asv_bound_pandering_part,
            ..pol(NpeAsv, "psi_bound", State::X)
        },
    ]
}
