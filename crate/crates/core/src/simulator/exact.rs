//! Exact expected utilities by enumeration of the game tree.
//!
//! The tree has eight cells (state, politician type, bureaucrat type). Within a cell each
//! rent-threshold branch is integrated analytically: its weight is `F(τ)` and the rent it
//! carries is the partial expectation of the rent on that branch. Period 2 enters through the
//! continuation tables.

use serde::Serialize;

use crate::continuation::{
    policymaker_continuations, voter_continuations, ContinuationTable, VoterContinuationTable,
};
use crate::model::{ModelParams, Policy, State, Type};

use super::profile::StrategyProfile;

/// Expected payoffs of every player and the induced outcome statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactReport {
    pub voter_welfare: f64,
    pub voter_welfare_given_good: f64,
    pub voter_welfare_given_bad: f64,
    /// Politician's expected utility conditional on its type, `[good, bad]`.
    pub politician_utility: [f64; 2],
    /// Bureaucrat's expected utility conditional on its type, `[good, bad]`.
    pub bureaucrat_utility: [f64; 2],
    pub politician_ex_ante: f64,
    pub bureaucrat_ex_ante: f64,
    /// Probability that x is implemented in period 1.
    pub prob_x: f64,
    /// Voter posterior that the incumbent is good after x (NaN if x never occurs).
    pub posterior_x: f64,
    /// Voter posterior that the incumbent is good after y (NaN if y never occurs).
    pub posterior_y: f64,
    pub reelection_good: f64,
    pub reelection_bad: f64,
    /// Probability that a bad incumbent is re-elected.
    pub eta: f64,
    /// Probability that a good politician holds office in period 2.
    pub zeta: f64,
}

/// Continuation tables bundled for payoff evaluation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Tables {
    pub voter: VoterContinuationTable,
    pub players: ContinuationTable,
}

impl Tables {
    pub fn new(params: &ModelParams) -> Self {
        Tables {
            voter: voter_continuations(params),
            players: policymaker_continuations(params),
        }
    }
}

/// Distribution of the implemented policy given the two proposals.
pub(crate) fn lottery(lambda: f64, proposal: Policy, counter: Policy) -> [(Policy, f64); 2] {
    if proposal == counter {
        [(proposal, 1.0), (proposal.other(), 0.0)]
    } else {
        [(counter, lambda), (proposal, 1.0 - lambda)]
    }
}

/// Voter payoff of implemented policy `p` in state `s`, including the discounted
/// continuation.
pub(crate) fn voter_payoff(
    params: &ModelParams,
    t: &Tables,
    pol: Type,
    bur: Type,
    s: State,
    p: Policy,
    reelected: bool,
) -> f64 {
    let cont = if reelected {
        t.voter
            .value(bur, if pol == Type::Good { 1.0 } else { 0.0 })
    } else {
        t.voter.challenger(bur)
    };
    params.payoffs().value(p, s) + params.delta() * cont
}

/// Politician payoff excluding its own period-1 rent.
pub(crate) fn politician_payoff(
    params: &ModelParams,
    t: &Tables,
    pol: Type,
    bur: Type,
    s: State,
    p: Policy,
    reelected: bool,
) -> f64 {
    let flow = match pol {
        Type::Good => params.payoffs().value(p, s),
        Type::Bad => 0.0,
    };
    flow + params.office_rent() + params.delta() * t.players.politician(pol, bur, reelected)
}

/// Bureaucrat payoff excluding its own period-1 rent, given the probability `p_good` that a
/// re-elected incumbent is good.
pub(crate) fn bureaucrat_payoff(
    params: &ModelParams,
    t: &Tables,
    bur: Type,
    s: State,
    p: Policy,
    reelected: bool,
    p_good: f64,
) -> f64 {
    let flow = match bur {
        Type::Good => params.payoffs().value(p, s),
        Type::Bad => 0.0,
    };
    let cont = if reelected {
        t.players.bureaucrat(bur, p_good)
    } else {
        t.players.bureaucrat_challenger(bur)
    };
    flow + params.delta() * cont
}

fn good_prob(pol: Type) -> f64 {
    match pol {
        Type::Good => 1.0,
        Type::Bad => 0.0,
    }
}

fn ratio_or_nan(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        f64::NAN
    }
}

/// Exact expected utilities of all players under `profile`.
pub fn exact_expected_utilities(profile: &StrategyProfile, params: &ModelParams) -> ExactReport {
    let t = Tables::new(params);
    let lambda = params.lambda();
    let (rent_p, rent_b) = (params.rent_p1(), params.rent_b1());
    let mut voter = [0.0; 2];
    let mut pol_u = [0.0; 2];
    let mut bur_u = [0.0; 2];
    let mut prob_x = 0.0;
    let mut good_and_x = 0.0;
    let mut good_and_y = 0.0;
    let mut reelected = [0.0; 2];
    let mut zeta = 0.0;
    for s in State::ALL {
        for pol in Type::ALL {
            for bur in Type::ALL {
                let cell = params.state_prob(s)
                    * params.politician_prior(pol)
                    * params.bureaucrat_prior(bur);
                let p_rule = profile.politician_rule(pol, s);
                for q in Policy::ALL {
                    let (wq, mass_q) = p_rule.branch(q, rent_p);
                    let b_rule = profile.bureaucrat_rule(bur, s, q);
                    for bq in Policy::ALL {
                        let (wb, mass_b) = b_rule.branch(bq, rent_b);
                        for (p, wl) in lottery(lambda, q, bq) {
                            let w = cell * wq * wb * wl;
                            let re = profile.voter.reelects(p);
                            voter[pol.index()] += w * voter_payoff(params, &t, pol, bur, s, p, re);
                            pol_u[pol.index()] +=
                                w * politician_payoff(params, &t, pol, bur, s, p, re);
                            bur_u[bur.index()] +=
                                w * bureaucrat_payoff(params, &t, bur, s, p, re, good_prob(pol));
                            if p == Policy::Y {
                                if pol == Type::Bad {
                                    pol_u[pol.index()] += cell * mass_q * wb * wl;
                                }
                                if bur == Type::Bad {
                                    bur_u[bur.index()] += cell * wq * mass_b * wl;
                                }
                            }
                            match p {
                                Policy::X => {
                                    prob_x += w;
                                    if pol == Type::Good {
                                        good_and_x += w;
                                    }
                                }
                                Policy::Y => {
                                    if pol == Type::Good {
                                        good_and_y += w;
                                    }
                                }
                            }
                            if re {
                                reelected[pol.index()] += w;
                                if pol == Type::Good {
                                    zeta += w;
                                }
                            } else {
                                zeta += w * params.pi();
                            }
                        }
                    }
                }
            }
        }
    }
    let pi = params.pi();
    let prior = [pi, 1.0 - pi];
    let cond = |v: [f64; 2], i: usize| v[i] / prior[i];
    let beta = params.beta();
    let bprior = [beta, 1.0 - beta];
    ExactReport {
        voter_welfare: voter[0] + voter[1],
        voter_welfare_given_good: cond(voter, 0),
        voter_welfare_given_bad: cond(voter, 1),
        politician_utility: [cond(pol_u, 0), cond(pol_u, 1)],
        bureaucrat_utility: [bur_u[0] / bprior[0], bur_u[1] / bprior[1]],
        politician_ex_ante: pol_u[0] + pol_u[1],
        bureaucrat_ex_ante: bur_u[0] + bur_u[1],
        prob_x,
        posterior_x: ratio_or_nan(good_and_x, prob_x),
        posterior_y: ratio_or_nan(good_and_y, 1.0 - prob_x),
        reelection_good: cond(reelected, 0),
        reelection_bad: cond(reelected, 1),
        eta: reelected[1],
        zeta,
    }
}
