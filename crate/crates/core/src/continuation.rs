//! Period-2 play and the continuation values it induces.
//!
//! In the second period every policymaker plays a dominant action: good types match the
//! state and bad types choose `y`. Given that, each player's expected period-2 payoff only
//! depends on who holds office. All values are undiscounted; callers apply `δ`.

use serde::Serialize;

use crate::model::{ModelParams, Policy, State, Type};

/// Period-2 proposal of a policymaker of type `actor` in state `state`.
pub fn period2_action(actor: Type, state: State) -> Policy {
    match actor {
        Type::Good => state,
        Type::Bad => Policy::Y,
    }
}

/// Policymakers' undiscounted period-2 continuation values.
///
/// Naming: `v_<bureaucrat>_<politician>` for bureaucrats, `v_<politician>_<bureaucrat>` for a
/// re-elected politician and `u_<politician>_<bureaucrat>` for a replaced one; `pi` stands for
/// an unknown challenger.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuationTable {
    pub v_gb_gp: f64,
    pub v_gb_bp: f64,
    pub v_gb_pi: f64,
    pub v_bb_gp: f64,
    pub v_bb_bp: f64,
    pub v_bb_pi: f64,
    pub v_gp_gb: f64,
    pub v_gp_bb: f64,
    pub u_gp_gb: f64,
    pub u_gp_bb: f64,
    pub v_bp_gb: f64,
    pub v_bp_bb: f64,
    pub u_bp: f64,
}

impl ContinuationTable {
    /// Value of a bureaucrat of type `bureaucrat` when the period-2 politician is good with
    /// probability `p_good`.
    pub fn bureaucrat(&self, bureaucrat: Type, p_good: f64) -> f64 {
        match bureaucrat {
            Type::Good => p_good * self.v_gb_gp + (1.0 - p_good) * self.v_gb_bp,
            Type::Bad => p_good * self.v_bb_gp + (1.0 - p_good) * self.v_bb_bp,
        }
    }

    /// Value of a bureaucrat when the incumbent is replaced by an unknown challenger.
    pub fn bureaucrat_challenger(&self, bureaucrat: Type) -> f64 {
        match bureaucrat {
            Type::Good => self.v_gb_pi,
            Type::Bad => self.v_bb_pi,
        }
    }

    /// Value of a period-1 politician given re-election outcome and bureaucrat type.
    pub fn politician(&self, politician: Type, bureaucrat: Type, reelected: bool) -> f64 {
        match (politician, bureaucrat, reelected) {
            (Type::Good, Type::Good, true) => self.v_gp_gb,
            (Type::Good, Type::Bad, true) => self.v_gp_bb,
            (Type::Good, Type::Good, false) => self.u_gp_gb,
            (Type::Good, Type::Bad, false) => self.u_gp_bb,
            (Type::Bad, Type::Good, true) => self.v_bp_gb,
            (Type::Bad, Type::Bad, true) => self.v_bp_bb,
            (Type::Bad, _, false) => self.u_bp,
        }
    }
}

/// Voter's undiscounted period-2 payoffs, `w_<bureaucrat>_<politician>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VoterContinuationTable {
    pub w_gb_gp: f64,
    pub w_gb_bp: f64,
    pub w_gb_pi: f64,
    pub w_bb_gp: f64,
    pub w_bb_bp: f64,
    pub w_bb_pi: f64,
}

impl VoterContinuationTable {
    /// Voter value when the period-2 politician is good with probability `p_good`.
    pub fn value(&self, bureaucrat: Type, p_good: f64) -> f64 {
        match bureaucrat {
            Type::Good => p_good * self.w_gb_gp + (1.0 - p_good) * self.w_gb_bp,
            Type::Bad => p_good * self.w_bb_gp + (1.0 - p_good) * self.w_bb_bp,
        }
    }

    /// Voter value when the incumbent is replaced by an unknown challenger.
    pub fn challenger(&self, bureaucrat: Type) -> f64 {
        match bureaucrat {
            Type::Good => self.w_gb_pi,
            Type::Bad => self.w_bb_pi,
        }
    }
}

/// Expected period-2 policy payoff `E[v(p₂, s₂)]` for a politician/bureaucrat pair.
fn period2_policy_value(params: &ModelParams, politician: Type, bureaucrat: Type) -> f64 {
    let v = params.payoffs();
    let lambda = params.lambda();
    let mut total = 0.0;
    for s in State::ALL {
        let q_p = period2_action(politician, s);
        let q_b = period2_action(bureaucrat, s);
        let value = if q_p == q_b {
            v.value(q_p, s)
        } else {
            lambda * v.value(q_b, s) + (1.0 - lambda) * v.value(q_p, s)
        };
        total += params.state_prob(s) * value;
    }
    total
}

/// Expected period-2 probability that `y` is implemented for a politician/bureaucrat pair.
fn period2_y_prob(params: &ModelParams, politician: Type, bureaucrat: Type) -> f64 {
    let lambda = params.lambda();
    let mut total = 0.0;
    for s in State::ALL {
        let q_p = period2_action(politician, s);
        let q_b = period2_action(bureaucrat, s);
        let p_y = match (q_p, q_b) {
            (Policy::Y, Policy::Y) => 1.0,
            (Policy::X, Policy::X) => 0.0,
            (_, Policy::Y) => lambda,
            (Policy::Y, _) => 1.0 - lambda,
        };
        total += params.state_prob(s) * p_y;
    }
    total
}

/// Voter continuation payoffs for every bureaucrat/politician configuration.
pub fn voter_continuations(params: &ModelParams) -> VoterContinuationTable {
    let pi = params.pi();
    let w = |b: Type, p: Type| period2_policy_value(params, p, b);
    let w_gb_gp = w(Type::Good, Type::Good);
    let w_gb_bp = w(Type::Good, Type::Bad);
    let w_bb_gp = w(Type::Bad, Type::Good);
    let w_bb_bp = w(Type::Bad, Type::Bad);
    VoterContinuationTable {
        w_gb_gp,
        w_gb_bp,
        w_gb_pi: pi * w_gb_gp + (1.0 - pi) * w_gb_bp,
        w_bb_gp,
        w_bb_bp,
        w_bb_pi: pi * w_bb_gp + (1.0 - pi) * w_bb_bp,
    }
}

/// Policymakers' continuation values.
///
/// Good policymakers share the voter's policy payoffs; bad ones collect their mean period-2
/// rent whenever `y` is implemented. A re-elected politician also receives the office rent
/// `E`; a replaced bad politician gets zero.
pub fn policymaker_continuations(params: &ModelParams) -> ContinuationTable {
    let pi = params.pi();
    let e = params.office_rent();
    let mu_b = params.mu2b();
    let mu_p = params.mu2p();
    let w = voter_continuations(params);
    let v_bb_gp = mu_b * period2_y_prob(params, Type::Good, Type::Bad);
    let v_bb_bp = mu_b * period2_y_prob(params, Type::Bad, Type::Bad);
    ContinuationTable {
        v_gb_gp: w.w_gb_gp,
        v_gb_bp: w.w_gb_bp,
        v_gb_pi: w.w_gb_pi,
        v_bb_gp,
        v_bb_bp,
        v_bb_pi: pi * v_bb_gp + (1.0 - pi) * v_bb_bp,
        v_gp_gb: w.w_gb_gp + e,
        v_gp_bb: w.w_bb_gp + e,
        u_gp_gb: w.w_gb_pi,
        u_gp_bb: w.w_bb_pi,
        v_bp_gb: mu_p * period2_y_prob(params, Type::Bad, Type::Good) + e,
        v_bp_bb: mu_p * period2_y_prob(params, Type::Bad, Type::Bad) + e,
        u_bp: 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::RawParams;
    use approx::assert_abs_diff_eq;

    fn params(f: impl FnOnce(&mut RawParams)) -> ModelParams {
        let mut raw = RawParams::default();
        f(&mut raw);
        raw.validate().unwrap()
    }

    #[test]
    fn period2_play_follows_types() {
        assert_eq!(period2_action(Type::Good, Policy::X), Policy::X);
        assert_eq!(period2_action(Type::Good, Policy::Y), Policy::Y);
        assert_eq!(period2_action(Type::Bad, Policy::X), Policy::Y);
        assert_eq!(period2_action(Type::Bad, Policy::Y), Policy::Y);
    }

    #[test]
    fn symmetric_examples() {
        let p = params(|_| {});
        let t = policymaker_continuations(&p);
        assert_abs_diff_eq!(t.v_gb_gp, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.v_gb_bp, 0.75, epsilon = 1e-15);
        let w = voter_continuations(&p);
        assert_abs_diff_eq!(w.w_gb_gp, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w.w_bb_gp, 0.75, epsilon = 1e-15);
    }

    #[test]
    fn bad_bureaucrat_challenger_value() {
        let p = params(|r| r.lambda = 0.0);
        let t = policymaker_continuations(&p);
        assert_abs_diff_eq!(t.v_bb_pi, 0.75, epsilon = 1e-15);
    }

    #[test]
    fn closed_forms_hold() {
        let p = params(|r| {
            r.rho = 0.3;
            r.pi = 0.6;
            r.lambda = 0.35;
            r.v_xx = 3.0;
            r.v_yx = -1.0;
            r.v_yy = 2.0;
            r.v_xy = 0.5;
            r.office_rent = 0.4;
            r.rent_b2_upper = 3.0;
            r.rent_p2_upper = 1.2;
        });
        let (rho, pi, lam) = (p.rho(), p.pi(), p.lambda());
        let v = *p.payoffs();
        let (mu_b, mu_p, e) = (p.mu2b(), p.mu2p(), p.office_rent());
        let t = policymaker_continuations(&p);
        let tol = 1e-13;
        assert_abs_diff_eq!(
            t.v_gb_gp,
            rho * v.v_xx + (1.0 - rho) * v.v_yy,
            epsilon = tol
        );
        assert_abs_diff_eq!(
            t.v_gb_bp,
            rho * (lam * v.v_xx + (1.0 - lam) * v.v_yx) + (1.0 - rho) * v.v_yy,
            epsilon = tol
        );
        assert_abs_diff_eq!(t.v_bb_gp, mu_b * (1.0 - rho * (1.0 - lam)), epsilon = tol);
        assert_abs_diff_eq!(t.v_bb_bp, mu_b, epsilon = tol);
        assert_abs_diff_eq!(
            t.v_bb_pi,
            mu_b * (1.0 - pi * rho * (1.0 - lam)),
            epsilon = tol
        );
        assert_abs_diff_eq!(
            t.u_gp_gb,
            rho * (pi + (1.0 - pi) * lam) * v.v_xx
                + (1.0 - rho) * v.v_yy
                + (1.0 - pi) * (1.0 - lam) * rho * v.v_yx,
            epsilon = tol
        );
        assert_abs_diff_eq!(
            t.u_gp_bb,
            pi * rho * (1.0 - lam) * v.v_xx
                + (1.0 - rho) * v.v_yy
                + rho * ((1.0 - pi) + pi * lam) * v.v_yx,
            epsilon = tol
        );
        assert_abs_diff_eq!(t.v_bp_gb, (1.0 - rho * lam) * mu_p + e, epsilon = tol);
        assert_abs_diff_eq!(t.v_bp_bb, mu_p + e, epsilon = tol);
        let diff = rho * lam * v.mismatch_cost_x();
        assert_abs_diff_eq!(t.v_gp_gb - t.v_gp_bb, diff, epsilon = tol);
        assert_abs_diff_eq!(t.u_gp_gb - t.u_gp_bb, diff, epsilon = tol);
        assert!(t.v_gp_gb > t.u_gp_gb);
    }

    #[test]
    fn degenerate_prior_collapses_challenger() {
        let p = params(|r| r.pi = 0.999_999_999);
        let w = voter_continuations(&p);
        assert_abs_diff_eq!(w.w_gb_pi, w.w_gb_gp, epsilon = 1e-9);
    }
}
