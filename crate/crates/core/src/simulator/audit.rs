//! Best-response audit: checks every information set for a profitable one-shot deviation.
//!
//! Payoffs are exact (no sampling). Rent-bearing decisions are checked on a grid of rent
//! quantiles: on each side of a threshold the payoff difference between the two actions is
//! affine in the player's own rent, so a wrong action anywhere in the support shows up at the
//! grid points up to grid resolution.

use serde::Serialize;

use crate::model::{ModelParams, Policy, RentSpec, State, Type};

use super::exact::{
    bureaucrat_payoff, exact_expected_utilities, lottery, politician_payoff, Tables,
};
use super::profile::StrategyProfile;

/// Default gain tolerance in payoff units.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Posterior gaps at or below this size count as voter indifference.
pub const VOTER_TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Politician,
    Bureaucrat,
    Voter,
}

/// Where a decision is taken.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfoSet {
    pub player: Player,
    /// The deciding policymaker's type (none for the voter).
    pub player_type: Option<Type>,
    /// Period-1 state (none for the voter).
    pub state: Option<State>,
    /// The politician's proposal for the bureaucrat; the implemented policy for the voter.
    pub observed: Option<Policy>,
    /// The player's own rent, for rent-bearing decisions.
    pub rent: Option<f64>,
    /// Index of `rent` in the quantile grid.
    pub grid_index: Option<usize>,
}

/// An information set without the rent: (player, type, state, observation).
pub type InfoSetKey = (Player, Option<Type>, Option<State>, Option<Policy>);

/// Payoffs of the prescribed action and the alternative at one information set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Deviation {
    pub info: InfoSet,
    /// For policymakers the prescribed proposal; for the voter x = re-elect, y = replace.
    pub prescribed: Policy,
    pub prescribed_payoff: f64,
    pub best_alternative_payoff: f64,
    /// `best_alternative_payoff − prescribed_payoff`.
    pub gain: f64,
}

/// Result of a best-response audit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviationReport {
    pub tolerance: f64,
    pub max_gain: f64,
    /// True when no gain exceeds the tolerance and the voter strictly prefers its rule.
    pub passes: bool,
    /// The voter is (numerically) indifferent after x: the outcome is uninformative.
    pub voter_indifferent: bool,
    pub entries: Vec<Deviation>,
}

impl DeviationReport {
    /// Entries whose gain exceeds the tolerance.
    pub fn failures(&self) -> impl Iterator<Item = &Deviation> {
        self.entries.iter().filter(|d| d.gain > self.tolerance)
    }

    /// Whether some information set matching the given filters has a profitable deviation
    /// (or, for the voter, an indifference). `None` filters match anything.
    pub fn fails_at(
        &self,
        player: Player,
        player_type: Option<Type>,
        state: Option<State>,
        observed: Option<Policy>,
    ) -> bool {
        let matches = |d: &Deviation| {
            d.info.player == player
                && (player_type.is_none() || d.info.player_type == player_type)
                && (state.is_none() || d.info.state == state)
                && (observed.is_none() || d.info.observed == observed)
        };
        self.failures().any(matches) || (player == Player::Voter && self.voter_indifferent)
    }

    /// Distinct (player, type, state, observation) sets with a profitable deviation.
    pub fn failing_info_sets(&self) -> Vec<InfoSetKey> {
        let mut out = Vec::new();
        for d in self.failures() {
            let key = (
                d.info.player,
                d.info.player_type,
                d.info.state,
                d.info.observed,
            );
            if !out.contains(&key) {
                out.push(key);
            }
        }
        out
    }
}

fn rent_grid(rent: &RentSpec, points: usize) -> Vec<f64> {
    let n = points.max(2);
    (0..n)
        .map(|i| rent.quantile_extended(i as f64 / (n - 1) as f64))
        .collect()
}

/// Bureaucrat's posterior that the politician is good after proposal `q` in state `s`, by
/// Bayes' rule from the profile; zero off the equilibrium path.
fn bureaucrat_belief(profile: &StrategyProfile, params: &ModelParams, q: Policy, s: State) -> f64 {
    let pi = params.pi();
    let rent = params.rent_p1();
    let like = |t: Type| profile.politician_rule(t, s).branch(q, rent).0;
    let num = pi * like(Type::Good);
    let den = num + (1.0 - pi) * like(Type::Bad);
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

/// Politician's expected payoff of proposing `q` in state `s` with own rent `r`.
fn politician_value(
    profile: &StrategyProfile,
    params: &ModelParams,
    t: &Tables,
    pol: Type,
    s: State,
    r: f64,
    q: Policy,
) -> f64 {
    let mut total = 0.0;
    for bur in Type::ALL {
        let rule = profile.bureaucrat_rule(bur, s, q);
        for bq in Policy::ALL {
            let (wb, _) = rule.branch(bq, params.rent_b1());
            for (p, wl) in lottery(params.lambda(), q, bq) {
                let w = params.bureaucrat_prior(bur) * wb * wl;
                if w == 0.0 {
                    continue;
                }
                let re = profile.voter.reelects(p);
                let mut u = politician_payoff(params, t, pol, bur, s, p, re);
                if pol == Type::Bad && p == Policy::Y {
                    u += r;
                }
                total += w * u;
            }
        }
    }
    total
}

/// Bureaucrat's expected payoff of proposing `a` after proposal `q` in state `s` with own
/// rent `r` and posterior `belief`.
#[allow(clippy::too_many_arguments)]
fn bureaucrat_value(
    profile: &StrategyProfile,
    params: &ModelParams,
    t: &Tables,
    bur: Type,
    s: State,
    q: Policy,
    r: f64,
    belief: f64,
    a: Policy,
) -> f64 {
    lottery(params.lambda(), q, a)
        .iter()
        .filter(|(_, w)| *w > 0.0)
        .map(|&(p, w)| {
            let re = profile.voter.reelects(p);
            let mut u = bureaucrat_payoff(params, t, bur, s, p, re, belief);
            if bur == Type::Bad && p == Policy::Y {
                u += r;
            }
            w * u
        })
        .sum()
}

fn entry(info: InfoSet, prescribed: Policy, value: impl Fn(Policy) -> f64) -> Deviation {
    let own = value(prescribed);
    let alt = value(prescribed.other());
    Deviation {
        info,
        prescribed,
        prescribed_payoff: own,
        best_alternative_payoff: alt,
        gain: alt - own,
    }
}

/// Audit every information set of `profile` for profitable deviations, checking rent-bearing
/// decisions at `rent_grid` quantile points (at least 2, endpoints included).
pub fn best_response_audit(
    profile: &StrategyProfile,
    params: &ModelParams,
    rent_grid_points: usize,
) -> DeviationReport {
    audit_with_tolerance(profile, params, rent_grid_points, DEFAULT_TOLERANCE)
}

/// [`best_response_audit`] with an explicit gain tolerance.
pub fn audit_with_tolerance(
    profile: &StrategyProfile,
    params: &ModelParams,
    rent_grid_points: usize,
    tolerance: f64,
) -> DeviationReport {
    let t = Tables::new(params);
    let mut entries = Vec::new();
    let p_grid = rent_grid(params.rent_p1(), rent_grid_points);
    let b_grid = rent_grid(params.rent_b1(), rent_grid_points);

    for s in State::ALL {
        for pol in Type::ALL {
            let rule = profile.politician_rule(pol, s);
            let rents: Vec<(Option<usize>, f64)> = match pol {
                Type::Good => vec![(None, 0.0)],
                Type::Bad => p_grid
                    .iter()
                    .copied()
                    .enumerate()
                    .map(|(i, r)| (Some(i), r))
                    .collect(),
            };
            for (idx, r) in rents {
                let info = InfoSet {
                    player: Player::Politician,
                    player_type: Some(pol),
                    state: Some(s),
                    observed: None,
                    rent: idx.map(|_| r),
                    grid_index: idx,
                };
                entries.push(entry(info, rule.act(r), |q| {
                    politician_value(profile, params, &t, pol, s, r, q)
                }));
            }
        }
        for q in Policy::ALL {
            let belief = bureaucrat_belief(profile, params, q, s);
            for bur in Type::ALL {
                let rule = profile.bureaucrat_rule(bur, s, q);
                let rents: Vec<(Option<usize>, f64)> = match bur {
                    Type::Good => vec![(None, 0.0)],
                    Type::Bad => b_grid
                        .iter()
                        .copied()
                        .enumerate()
                        .map(|(i, r)| (Some(i), r))
                        .collect(),
                };
                for (idx, r) in rents {
                    let info = InfoSet {
                        player: Player::Bureaucrat,
                        player_type: Some(bur),
                        state: Some(s),
                        observed: Some(q),
                        rent: idx.map(|_| r),
                        grid_index: idx,
                    };
                    entries.push(entry(info, rule.act(r), |a| {
                        bureaucrat_value(profile, params, &t, bur, s, q, r, belief, a)
                    }));
                }
            }
        }
    }

    // The voter compares the posterior after each implemented policy with the prior: the
    // value of re-electing over replacing is `δρ(1−λ)[v(x,x)−v(y,x)]·(posterior − π)`.
    let exact = exact_expected_utilities(profile, params);
    let scale = params.delta()
        * params.rho()
        * (1.0 - params.lambda())
        * params.payoffs().mismatch_cost_x();
    let mut voter_indifferent = false;
    for (p, posterior) in [
        (Policy::X, exact.posterior_x),
        (Policy::Y, exact.posterior_y),
    ] {
        if posterior.is_nan() {
            continue;
        }
        if p == Policy::X && (posterior - params.pi()).abs() <= VOTER_TIE_TOLERANCE {
            voter_indifferent = true;
        }
        let reelect = profile.voter.reelects(p);
        let value = |choice: Policy| match choice {
            Policy::X => scale * (posterior - params.pi()),
            Policy::Y => 0.0,
        };
        let info = InfoSet {
            player: Player::Voter,
            player_type: None,
            state: None,
            observed: Some(p),
            rent: None,
            grid_index: None,
        };
        entries.push(entry(
            info,
            if reelect { Policy::X } else { Policy::Y },
            value,
        ));
    }

    let max_gain = entries
        .iter()
        .map(|d| d.gain)
        .fold(f64::NEG_INFINITY, f64::max);
    DeviationReport {
        tolerance,
        max_gain,
        passes: max_gain <= tolerance && !voter_indifferent,
        voter_indifferent,
        entries,
    }
}
