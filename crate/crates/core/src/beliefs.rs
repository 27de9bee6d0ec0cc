//! Equilibrium mixing probabilities and Bayesian posteriors for each equilibrium class.
//!
//! Bad policymakers use rent-threshold strategies, so every mixing probability is a rent-cdf
//! evaluated at an explicit cutoff. The chain `ξ → γ` is explicit: nothing is solved
//! numerically.

use serde::Serialize;

use crate::error::{ModelError, Result};
use crate::model::{EquilibriumClass, ModelParams, Policy, RentSpec, State};

/// Which good-bureaucrat behaviour a non-pandering equilibrium features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NpeVariant {
    /// Stand-firm: good bureaucrats always match the state.
    Sf,
    /// Forcing-subversive: good politicians still prefer to match the state.
    Fsv,
    /// Administrative-subversive: good politicians rely on bureaucrats to pander.
    Asv,
}

impl NpeVariant {
    /// The equilibrium class of this variant.
    pub fn class(self) -> EquilibriumClass {
        match self {
            NpeVariant::Sf => EquilibriumClass::NpeSf,
            NpeVariant::Fsv => EquilibriumClass::NpeFsv,
            NpeVariant::Asv => EquilibriumClass::NpeAsv,
        }
    }
}

/// A linear rent condition of the form "propose x iff `coefficient · r ≤ constant`".
///
/// Every bad-politician decision reduces to such a comparison because payoffs are affine in
/// the realised rent. The sign of the coefficient decides whether low or high rents lead to
/// proposing `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RentCutoff {
    pub coefficient: f64,
    pub constant: f64,
}

impl RentCutoff {
    /// The rent at which the two actions are equally good, if the coefficient is non-zero.
    pub fn threshold(&self) -> Option<f64> {
        (self.coefficient != 0.0).then(|| self.constant / self.coefficient)
    }

    /// Probability of proposing `x` when rents follow `rent`.
    pub fn prob_x(&self, rent: &RentSpec) -> f64 {
        if self.coefficient > 0.0 {
            rent.cdf(self.constant / self.coefficient)
        } else if self.coefficient < 0.0 {
            1.0 - rent.cdf(self.constant / self.coefficient)
        } else if self.constant >= 0.0 {
            1.0
        } else {
            0.0
        }
    }
}

/// Rent threshold below which a bad bureaucrat forces `x` on a surely-bad incumbent:
/// `δπρ(1−λ)μ₂ᴮ`.
pub fn bad_bureaucrat_threshold(params: &ModelParams) -> f64 {
    params.delta() * params.pi() * params.rho() * (1.0 - params.lambda()) * params.mu2b()
}

fn bureaucrat_mixing(params: &ModelParams) -> Result<f64> {
    params.require_interior_lambda()?;
    Ok(params.rent_b1().cdf(bad_bureaucrat_threshold(params)))
}

/// Probability `ξ` that a bad bureaucrat proposes `x` after a `y` proposal in a pandering
/// equilibrium.
pub fn xi(params: &ModelParams) -> Result<f64> {
    bureaucrat_mixing(params)
}

/// Probability `ψ` that a bad bureaucrat proposes `x` after a state-mismatching proposal in a
/// non-pandering equilibrium. Numerically equal to [`xi`], but it governs a different event.
pub fn psi(params: &ModelParams) -> Result<f64> {
    bureaucrat_mixing(params)
}

/// Rent coefficient of the bad politician's comparison in state x (shared by all classes):
/// `1 − λ[1 + m(1−β)]`.
fn coefficient_state_x(params: &ModelParams, mixing: f64) -> f64 {
    let (l, b) = (params.lambda(), params.beta());
    1.0 - l * (1.0 + mixing * (1.0 - b))
}

/// The bad politician's decision rule in state `state` for class `class`, given the bad
/// bureaucrat's mixing probability.
pub fn bad_politician_cutoff(
    params: &ModelParams,
    class: EquilibriumClass,
    state: State,
    mixing: f64,
) -> RentCutoff {
    let (d, l, b, r) = (params.delta(), params.lambda(), params.beta(), params.rho());
    let mu = params.mu2p();
    let a = mu + params.office_rent();
    let standard = |coefficient: f64, correction: f64| RentCutoff {
        coefficient,
        constant: d * (a * coefficient - b * r * l * correction * mu),
    };
    match (class, state) {
        (_, Policy::X) | (EquilibriumClass::Pecb, Policy::Y) => {
            standard(coefficient_state_x(params, mixing), 1.0 - l)
        }
        (EquilibriumClass::Pepb, Policy::Y) => standard(1.0 - l * (1.0 + mixing) * (1.0 - b), 1.0),
        (EquilibriumClass::NpeSf, Policy::Y) => {
            standard(1.0 - l * (1.0 - mixing * (1.0 - b)), 1.0 - l)
        }
        (EquilibriumClass::NpeFsv | EquilibriumClass::NpeAsv, Policy::Y) => {
            standard(1.0 - l * (1.0 + b - mixing * (1.0 - b)), 1.0 - 2.0 * l)
        }
    }
}

fn positive_denominator_prob(params: &ModelParams, cutoff: RentCutoff, what: &str) -> Result<f64> {
    if cutoff.coefficient <= 0.0 {
        return Err(ModelError::Structural(format!(
            "{what}: rent coefficient {} is not positive",
            cutoff.coefficient
        )));
    }
    Ok(cutoff.prob_x(params.rent_p1()))
}

/// Probability `γ` that a bad politician proposes `x` in a PECB (identical in both states).
pub fn gamma_pecb(params: &ModelParams, xi: f64) -> Result<f64> {
    params.require_interior_lambda()?;
    let cutoff = bad_politician_cutoff(params, EquilibriumClass::Pecb, Policy::X, xi);
    positive_denominator_prob(params, cutoff, "gamma (PECB)")
}

/// Probability `γ(y)` that a bad politician proposes `x` in state y in a PEPB.
pub fn gamma_pepb_y(params: &ModelParams, xi: f64) -> Result<f64> {
    params.require_interior_lambda()?;
    let cutoff = bad_politician_cutoff(params, EquilibriumClass::Pepb, Policy::Y, xi);
    positive_denominator_prob(params, cutoff, "gamma(y) (PEPB)")
}

/// Probabilities `(γ(x), γ(y))` that a bad politician proposes `x` in a non-pandering
/// equilibrium of the given variant.
///
/// The forcing-subversive formula requires the state-y rent coefficient to be positive
/// (`ψ > Ψ̃` or `λ ≤ 1/(1+β)`); the administrative-subversive one requires it to be negative.
pub fn gamma_npe(params: &ModelParams, psi: f64, variant: NpeVariant) -> Result<(f64, f64)> {
    params.require_interior_lambda()?;
    let class = variant.class();
    let gx = positive_denominator_prob(
        params,
        bad_politician_cutoff(params, class, Policy::X, psi),
        "gamma(x) (NPE)",
    )?;
    let cy = bad_politician_cutoff(params, class, Policy::Y, psi);
    let gy = match variant {
        NpeVariant::Sf => positive_denominator_prob(params, cy, "gamma(y) (NPE-SF)")?,
        NpeVariant::Fsv => {
            if cy.coefficient <= 0.0 {
                return Err(ModelError::Precondition(format!(
                    "NPE-FSV gamma(y) needs psi above the subversion threshold (coefficient {})",
                    cy.coefficient
                )));
            }
            cy.prob_x(params.rent_p1())
        }
        NpeVariant::Asv => {
            if cy.coefficient >= 0.0 {
                return Err(ModelError::Precondition(format!(
                    "NPE-ASV gamma(y) needs psi below the subversion threshold (coefficient {})",
                    cy.coefficient
                )));
            }
            cy.prob_x(params.rent_p1())
        }
    };
    Ok((gx, gy))
}

/// Bureaucrat posteriors `Π_B(proposal, state)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BureaucratPosteriors {
    pub x_x: f64,
    pub x_y: f64,
    pub y_x: f64,
    pub y_y: f64,
}

impl BureaucratPosteriors {
    /// `Π_B(proposal, state)`.
    pub fn get(&self, proposal: Policy, state: State) -> f64 {
        match (proposal, state) {
            (Policy::X, Policy::X) => self.x_x,
            (Policy::X, Policy::Y) => self.x_y,
            (Policy::Y, Policy::X) => self.y_x,
            (Policy::Y, Policy::Y) => self.y_y,
        }
    }
}

/// Class-specific equilibrium beliefs at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BeliefProfile {
    #[serde(rename = "class")]
    pub eq_class: EquilibriumClass,
    /// Bad bureaucrat's mixing probability in a pandering class.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    /// Bad bureaucrat's mixing probability in a non-pandering class.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<f64>,
    pub gamma_x: f64,
    pub gamma_y: f64,
    /// Voter posterior after `p₁ = x`.
    pub pi_v_x: f64,
    /// Voter posterior after `p₁ = y`.
    pub pi_v_y: f64,
    pub pi_b: BureaucratPosteriors,
    /// Probability that a good incumbent's play ends in `p₁ = x`.
    pub implement_x_good: f64,
    /// Probability that a bad incumbent's play ends in `p₁ = x`.
    pub implement_x_bad: f64,
    /// Pandering classes: probability that a proposal `x` is implemented as `x`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_v: Option<f64>,
    /// Pandering classes: probability that a proposal `y` is implemented as `y`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_v: Option<f64>,
}

impl BeliefProfile {
    /// The bad bureaucrat's mixing probability (`ξ` or `ψ`).
    pub fn mixing(&self) -> f64 {
        self.xi.or(self.psi).unwrap_or(f64::NAN)
    }

    /// Voter posterior after observing `p₁`.
    pub fn voter_posterior(&self, p: Policy) -> f64 {
        match p {
            Policy::X => self.pi_v_x,
            Policy::Y => self.pi_v_y,
        }
    }
}

/// Probabilities that a good and a bad incumbent's play ends in `p₁ = x`.
fn implementation_probs(
    params: &ModelParams,
    class: EquilibriumClass,
    mixing: f64,
    gx: f64,
    gy: f64,
) -> (f64, f64) {
    let (r, l, b) = (params.rho(), params.lambda(), params.beta());
    let m = mixing;
    match class {
        EquilibriumClass::Pecb => {
            let x_v = (1.0 - l) + b * r * l;
            let not_y_v = b * r * l + (1.0 - b) * m * l;
            (x_v, gx * x_v + (1.0 - gx) * not_y_v)
        }
        EquilibriumClass::Pepb => {
            let x_v = 1.0 - l * (1.0 - b);
            let bad = r * (gx * x_v + (1.0 - gx) * (b * l + (1.0 - b) * m * l))
                + (1.0 - r) * (gy * x_v + (1.0 - gy) * (1.0 - b) * m * l);
            (x_v, bad)
        }
        EquilibriumClass::NpeSf | EquilibriumClass::NpeFsv | EquilibriumClass::NpeAsv => {
            let good_sf = r * (1.0 - l * (1.0 - b));
            let bad_sf = gx * good_sf
                + (1.0 - gx) * r * l * (b + (1.0 - b) * m)
                + gy * (1.0 - r) * (b * (1.0 - l) + (1.0 - b) * (m + (1.0 - m) * (1.0 - l)));
            if class == EquilibriumClass::NpeSf {
                (good_sf, bad_sf)
            } else {
                (
                    good_sf + (1.0 - r) * b * l,
                    bad_sf + (1.0 - r) * (1.0 - gy) * b * l,
                )
            }
        }
    }
}

fn bayes(prior: f64, like_good: f64, like_bad: f64, what: &'static str) -> Result<f64> {
    let den = prior * like_good + (1.0 - prior) * like_bad;
    if den <= 0.0 {
        return Err(ModelError::DegeneratePosterior(what));
    }
    Ok(prior * like_good / den)
}

fn bureaucrat_posteriors(
    params: &ModelParams,
    class: EquilibriumClass,
    gx: f64,
    gy: f64,
) -> BureaucratPosteriors {
    let pi = params.pi();
    let after_x = |g: f64| pi / (pi + (1.0 - pi) * g);
    match class {
        EquilibriumClass::Pecb => BureaucratPosteriors {
            x_x: after_x(gx),
            x_y: after_x(gx),
            y_x: 0.0,
            y_y: 0.0,
        },
        EquilibriumClass::Pepb => BureaucratPosteriors {
            x_x: after_x(gx),
            x_y: after_x(gy),
            y_x: 0.0,
            y_y: 0.0,
        },
        _ => BureaucratPosteriors {
            x_x: after_x(gx),
            x_y: 0.0,
            y_x: 0.0,
            y_y: pi / (pi + (1.0 - pi) * (1.0 - gy)),
        },
    }
}

/// Full belief profile of a class at a parameter point.
///
/// Bad-politician mixing probabilities come from the sign-aware rent cutoffs, so the profile
/// is defined even where a class's closed form has no meaning (such points simply fail
/// certification).
pub fn belief_profile(class: EquilibriumClass, params: &ModelParams) -> Result<BeliefProfile> {
    params.require_interior_lambda()?;
    let mixing = bureaucrat_mixing(params)?;
    let rent = params.rent_p1();
    let gx = bad_politician_cutoff(params, class, Policy::X, mixing).prob_x(rent);
    let gy = bad_politician_cutoff(params, class, Policy::Y, mixing).prob_x(rent);
    let (good, bad) = implementation_probs(params, class, mixing, gx, gy);
    let pi = params.pi();
    let pi_v_x = bayes(pi, good, bad, "policy x is never implemented")?;
    let pi_v_y = bayes(pi, 1.0 - good, 1.0 - bad, "policy y is never implemented")?;
    let (x_v, y_v) = if class.is_pandering() {
        let (r, l, b) = (params.rho(), params.lambda(), params.beta());
        let y_v = b * (1.0 - r * l) + (1.0 - b) * (1.0 - mixing * l);
        let x_v = if class == EquilibriumClass::Pecb {
            b * r * l + (1.0 - l)
        } else {
            b * l + (1.0 - l)
        };
        (Some(x_v), Some(y_v))
    } else {
        (None, None)
    };
    Ok(BeliefProfile {
        eq_class: class,
        xi: class.is_pandering().then_some(mixing),
        psi: (!class.is_pandering()).then_some(mixing),
        gamma_x: gx,
        gamma_y: gy,
        pi_v_x,
        pi_v_y,
        pi_b: bureaucrat_posteriors(params, class, gx, gy),
        implement_x_good: good,
        implement_x_bad: bad,
        x_v,
        y_v,
    })
}

/// Voter posterior `Π_V(x)` by Bayes' rule from the class's implementation probabilities.
pub fn voter_posterior(params: &ModelParams, beliefs: &BeliefProfile) -> Result<f64> {
    let (good, bad) = implementation_probs(
        params,
        beliefs.eq_class,
        beliefs.mixing(),
        beliefs.gamma_x,
        beliefs.gamma_y,
    );
    bayes(params.pi(), good, bad, "policy x is never implemented")
}

/// Bureaucrat posterior `Π_B(proposal, state)` for the class of `beliefs`.
pub fn bureaucrat_posterior(
    params: &ModelParams,
    beliefs: &BeliefProfile,
    proposal: Policy,
    state: State,
) -> f64 {
    bureaucrat_posteriors(params, beliefs.eq_class, beliefs.gamma_x, beliefs.gamma_y)
        .get(proposal, state)
}

/// Informativeness thresholds and whether the class's informativeness requirements hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InformativenessReport {
    pub holds: bool,
    pub big_gamma: f64,
    pub big_lambda: f64,
    pub gamma_hat: f64,
    pub lambda_tilde: f64,
    pub rho_hat: f64,
    /// Upper bound the bad bureaucrat's mixing probability must stay below.
    pub binding_bound_on_mixing: f64,
    /// Whether that bound is below one, i.e. actually restricts the mixing probability.
    pub bound_binds: bool,
}

fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        f64::NAN
    } else {
        num / den
    }
}

/// `(1−λ)/(λ(1−β))`: the largest bad-bureaucrat mixing probability compatible with `x` being
/// good news about the incumbent in a pandering equilibrium.
pub fn pandering_mixing_bound(params: &ModelParams) -> f64 {
    let (l, b) = (params.lambda(), params.beta());
    (1.0 - l) / (l * (1.0 - b))
}

/// Weaker standalone PEPB bound on `ξ`, before the good politician's behaviour in state x is
/// taken into account. Reported for reference; certification uses [`pandering_mixing_bound`].
pub fn pepb_standalone_bound(params: &ModelParams) -> f64 {
    let (r, b) = (params.rho(), params.beta());
    pandering_mixing_bound(params) + (1.0 - r) * b / (1.0 - b)
}

/// `Γ`, `Λ`, `Γ̂`, `Λ̃` and `ρ̂` from the bad politician's state-contingent mixing.
pub fn informativeness(params: &ModelParams, beliefs: &BeliefProfile) -> InformativenessReport {
    let (r, l, b) = (params.rho(), params.lambda(), params.beta());
    let (gx, gy) = (beliefs.gamma_x, beliefs.gamma_y);
    let m = beliefs.mixing();
    let diff = r * (1.0 - gx) - (1.0 - r) * gy;
    let sum = r * (1.0 - gx) + (1.0 - r) * gy;
    let big_gamma = ratio(diff, sum);
    let big_lambda = ratio(diff, r * (2.0 * (1.0 - gx) - b * (1.0 - gx - gy)) - b * gy);
    let gamma_hat = ratio((1.0 - r) * gy, sum);
    let lambda_tilde = ratio(diff, r * (1.0 - gx) - (1.0 + b) * (1.0 - r) * gy);
    let rho_hat = ratio(gy, 1.0 - gx + gy);
    let pe_bound = pandering_mixing_bound(params);
    let (bound, holds) = match beliefs.eq_class {
        EquilibriumClass::Pecb => (pe_bound, gx < 1.0 && m < pe_bound),
        EquilibriumClass::Pepb => {
            let gamma_pooled = r * gx + (1.0 - r) * gy;
            (pe_bound, gamma_pooled < 1.0 && m < pe_bound)
        }
        EquilibriumClass::NpeSf => {
            let bound = pe_bound * big_gamma;
            (bound, gx < 1.0 && r > rho_hat && m < bound)
        }
        EquilibriumClass::NpeFsv | EquilibriumClass::NpeAsv => {
            let bound = pe_bound * big_gamma + b / (1.0 - b) * gamma_hat;
            let rho_ok = r >= rho_hat || l > lambda_tilde;
            (bound, rho_ok && m < bound)
        }
    };
    InformativenessReport {
        holds,
        big_gamma,
        big_lambda,
        gamma_hat,
        lambda_tilde,
        rho_hat,
        binding_bound_on_mixing: bound,
        bound_binds: bound < 1.0,
    }
}
