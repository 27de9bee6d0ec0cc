//! Executable strategy profiles.

use serde::Serialize;

use crate::beliefs::{self, RentCutoff};
use crate::certifier;
use crate::error::{ModelError, Result};
use crate::model::{EquilibriumClass, ModelParams, Policy, RentSpec, State, Type};

/// A period-1 proposal rule over the policymaker's own rent `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum ActionRule {
    AlwaysX,
    AlwaysY,
    /// Propose x iff `r ≤ tau`.
    Threshold {
        tau: f64,
    },
    /// Propose x iff `r ≥ tau`.
    InverseThreshold {
        tau: f64,
    },
}

impl ActionRule {
    /// The rule that proposes `policy` regardless of rents.
    pub fn always(policy: Policy) -> Self {
        match policy {
            Policy::X => ActionRule::AlwaysX,
            Policy::Y => ActionRule::AlwaysY,
        }
    }

    /// The rule implementing "propose x iff `coefficient · r ≤ constant`", with thresholds
    /// outside the rent support collapsed to the corresponding constant rule.
    pub fn from_cutoff(cutoff: RentCutoff, rent: &RentSpec) -> Self {
        let upper = rent.upper_bound;
        match cutoff.threshold() {
            None if cutoff.constant >= 0.0 => ActionRule::AlwaysX,
            None => ActionRule::AlwaysY,
            Some(tau) if cutoff.coefficient > 0.0 => {
                if tau < 0.0 {
                    ActionRule::AlwaysY
                } else if tau >= upper {
                    ActionRule::AlwaysX
                } else {
                    ActionRule::Threshold { tau }
                }
            }
            Some(tau) => {
                if tau <= 0.0 {
                    ActionRule::AlwaysX
                } else if tau > upper {
                    ActionRule::AlwaysY
                } else {
                    ActionRule::InverseThreshold { tau }
                }
            }
        }
    }

    /// The proposal made at rent `r`.
    pub fn act(&self, r: f64) -> Policy {
        let x = match *self {
            ActionRule::AlwaysX => true,
            ActionRule::AlwaysY => false,
            ActionRule::Threshold { tau } => r <= tau,
            ActionRule::InverseThreshold { tau } => r >= tau,
        };
        if x {
            Policy::X
        } else {
            Policy::Y
        }
    }

    /// Probability of proposing x when rents follow `rent`.
    pub fn prob_x(&self, rent: &RentSpec) -> f64 {
        match *self {
            ActionRule::AlwaysX => 1.0,
            ActionRule::AlwaysY => 0.0,
            ActionRule::Threshold { tau } => rent.cdf(tau),
            ActionRule::InverseThreshold { tau } => 1.0 - rent.cdf(tau),
        }
    }

    /// `E[r · 1{propose x}]`: rent mass on the branch that proposes x.
    pub fn rent_mass_x(&self, rent: &RentSpec) -> f64 {
        match *self {
            ActionRule::AlwaysX => rent.mean(),
            ActionRule::AlwaysY => 0.0,
            ActionRule::Threshold { tau } => rent.partial_expectation(tau),
            ActionRule::InverseThreshold { tau } => rent.mean() - rent.partial_expectation(tau),
        }
    }

    /// Probability and rent mass of the branch proposing `policy`.
    pub fn branch(&self, policy: Policy, rent: &RentSpec) -> (f64, f64) {
        let (p, m) = (self.prob_x(rent), self.rent_mass_x(rent));
        match policy {
            Policy::X => (p, m),
            Policy::Y => (1.0 - p, rent.mean() - m),
        }
    }
}

/// The voter's retention rule: which implemented policies lead to re-election.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VoterRule {
    pub reelect_on_x: bool,
    pub reelect_on_y: bool,
}

impl VoterRule {
    /// Re-elect iff the implemented policy is x.
    pub const INFORMATIVE: VoterRule = VoterRule {
        reelect_on_x: true,
        reelect_on_y: false,
    };

    pub fn reelects(&self, p: Policy) -> bool {
        match p {
            Policy::X => self.reelect_on_x,
            Policy::Y => self.reelect_on_y,
        }
    }
}

/// Period-1 strategies of both policymakers and the voter. Period-2 play is fixed: good types
/// match the state and bad types choose y.
///
/// Rules are indexed by [`Type::index`], [`Policy::index`] for the state and, for the
/// bureaucrat, [`Policy::index`] for the politician's proposal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrategyProfile {
    #[serde(rename = "class")]
    pub eq_class: Option<EquilibriumClass>,
    /// `politician[type][state]`, a rule over `r₁ᴾ`.
    pub politician: [[ActionRule; 2]; 2],
    /// `bureaucrat[type][state][proposal]`, a rule over `r₁ᴮ`.
    pub bureaucrat: [[[ActionRule; 2]; 2]; 2],
    pub voter: VoterRule,
}

impl StrategyProfile {
    /// A profile in which every policymaker always proposes `policy`.
    pub fn constant(policy: Policy) -> Self {
        let a = ActionRule::always(policy);
        StrategyProfile {
            eq_class: None,
            politician: [[a; 2]; 2],
            bureaucrat: [[[a; 2]; 2]; 2],
            voter: VoterRule::INFORMATIVE,
        }
    }

    pub fn politician_rule(&self, t: Type, s: State) -> ActionRule {
        self.politician[t.index()][s.index()]
    }

    pub fn bureaucrat_rule(&self, t: Type, s: State, proposal: Policy) -> ActionRule {
        self.bureaucrat[t.index()][s.index()][proposal.index()]
    }

    pub fn set_politician_rule(&mut self, t: Type, s: State, rule: ActionRule) {
        self.politician[t.index()][s.index()] = rule;
    }

    pub fn set_bureaucrat_rule(&mut self, t: Type, s: State, proposal: Policy, rule: ActionRule) {
        self.bureaucrat[t.index()][s.index()][proposal.index()] = rule;
    }
}

/// The class's equilibrium strategies at `params`, whether or not the class is certified.
///
/// Bad policymakers' thresholds are the indifference rents of the class, so the induced
/// mixing probabilities equal the belief profile's.
pub fn build_profile_unchecked(
    class: EquilibriumClass,
    params: &ModelParams,
) -> Result<StrategyProfile> {
    params.require_interior_lambda()?;
    let mixing = beliefs::xi(params)?;
    let mut profile = StrategyProfile::constant(Policy::X);
    profile.eq_class = Some(class);
    let bad_b_forcing = ActionRule::from_cutoff(
        RentCutoff {
            coefficient: 1.0,
            constant: beliefs::bad_bureaucrat_threshold(params),
        },
        params.rent_b1(),
    );
    for s in State::ALL {
        // Politicians.
        let good_p = if class.is_pandering() {
            ActionRule::AlwaysX
        } else {
            ActionRule::always(s)
        };
        profile.set_politician_rule(Type::Good, s, good_p);
        let cutoff = beliefs::bad_politician_cutoff(params, class, s, mixing);
        profile.set_politician_rule(
            Type::Bad,
            s,
            ActionRule::from_cutoff(cutoff, params.rent_p1()),
        );

        for q in Policy::ALL {
            // Good bureaucrats.
            let good_b = match (class, s, q) {
                (EquilibriumClass::Pepb, _, Policy::X) => Policy::X,
                (EquilibriumClass::NpeFsv | EquilibriumClass::NpeAsv, Policy::Y, Policy::Y) => {
                    Policy::X
                }
                _ => s,
            };
            profile.set_bureaucrat_rule(Type::Good, s, q, ActionRule::always(good_b));
            // Bad bureaucrats: in pandering classes only a y proposal is worth contesting;
            // otherwise only a proposal that does not match the state.
            let contest = if class.is_pandering() {
                q == Policy::Y
            } else {
                q != s
            };
            let bad_b = if contest {
                bad_b_forcing
            } else {
                ActionRule::AlwaysY
            };
            profile.set_bureaucrat_rule(Type::Bad, s, q, bad_b);
        }
    }
    Ok(profile)
}

/// The class's equilibrium strategies, provided the class is certified at `params`.
pub fn build_profile(class: EquilibriumClass, params: &ModelParams) -> Result<StrategyProfile> {
    let cert = certifier::certify(class, params)?;
    if !cert.verdict {
        return Err(ModelError::Uncertified {
            class: class.to_string(),
            failing: cert.failing_names(),
        });
    }
    build_profile_unchecked(class, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beliefs::belief_profile;
    use crate::model::RawParams;
    use approx::assert_abs_diff_eq;

    fn params(f: impl FnOnce(&mut RawParams)) -> ModelParams {
        let mut raw = RawParams::default();
        f(&mut raw);
        raw.validate().unwrap()
    }

    #[test]
    fn pecb_rules() {
        let p = params(|_| {});
        let prof = build_profile(EquilibriumClass::Pecb, &p).unwrap();
        for s in State::ALL {
            assert_eq!(prof.politician_rule(Type::Good, s), ActionRule::AlwaysX);
        }
        let tau = beliefs::bad_bureaucrat_threshold(&p);
        assert_eq!(
            prof.bureaucrat_rule(Type::Bad, Policy::X, Policy::Y),
            ActionRule::Threshold { tau }
        );
        assert_eq!(
            prof.bureaucrat_rule(Type::Bad, Policy::Y, Policy::X),
            ActionRule::AlwaysY
        );
        let b = belief_profile(EquilibriumClass::Pecb, &p).unwrap();
        let r = p.rent_p1();
        assert_abs_diff_eq!(
            prof.politician_rule(Type::Bad, Policy::X).prob_x(r),
            b.gamma_x
        );
        assert_abs_diff_eq!(
            prof.politician_rule(Type::Bad, Policy::Y).prob_x(r),
            b.gamma_y
        );
    }

    #[test]
    fn npe_sf_rules() {
        let p = params(|r| {
            r.office_rent = 0.85;
            r.beta = 0.9;
            r.rho = 0.85;
            r.pi = 0.7;
            r.lambda = 0.6;
        });
        let prof = build_profile(EquilibriumClass::NpeSf, &p).unwrap();
        assert_eq!(
            prof.politician_rule(Type::Good, Policy::X),
            ActionRule::AlwaysX
        );
        assert_eq!(
            prof.politician_rule(Type::Good, Policy::Y),
            ActionRule::AlwaysY
        );
        let b = belief_profile(EquilibriumClass::NpeSf, &p).unwrap();
        assert_abs_diff_eq!(
            prof.politician_rule(Type::Bad, Policy::Y)
                .prob_x(p.rent_p1()),
            b.gamma_y,
            epsilon = 1e-15
        );
    }

    #[test]
    fn uncertified_class_is_rejected() {
        let p = params(|_| {});
        assert!(matches!(
            build_profile(EquilibriumClass::NpeSf, &p),
            Err(ModelError::Uncertified { .. })
        ));
    }

    #[test]
    fn cutoff_collapse() {
        let rent = RentSpec::uniform(2.0);
        let rule = |c: f64, k: f64| {
            ActionRule::from_cutoff(
                RentCutoff {
                    coefficient: c,
                    constant: k,
                },
                &rent,
            )
        };
        assert_eq!(rule(1.0, -0.1), ActionRule::AlwaysY);
        assert_eq!(rule(1.0, 3.0), ActionRule::AlwaysX);
        assert_eq!(rule(-1.0, 0.5), ActionRule::AlwaysX);
        assert_eq!(rule(-1.0, -3.0), ActionRule::AlwaysY);
        assert_eq!(rule(-1.0, -1.0), ActionRule::InverseThreshold { tau: 1.0 });
        let t = ActionRule::Threshold { tau: 1.0 };
        assert_abs_diff_eq!(t.rent_mass_x(&rent), 0.25);
        assert_abs_diff_eq!(t.branch(Policy::Y, &rent).1, 0.75);
    }
}
