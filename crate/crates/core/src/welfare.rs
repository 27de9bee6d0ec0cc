//! Voter welfare, the λ ∈ {0, 1} benchmarks, the welfare jump at `ℓ` and political selection.

use serde::Serialize;

use crate::beliefs::{self, bad_politician_cutoff};
use crate::certifier;
use crate::continuation::voter_continuations;
use crate::error::{ModelError, Result};
use crate::model::{EquilibriumClass, ModelParams, Policy};
use crate::simulator;

/// How a welfare figure was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WelfareSource {
    /// Transcribed closed-form expression.
    ClosedForm,
    /// Exact expectation over the game tree of the class's strategy profile.
    GameTree,
    /// Dedicated formula for `λ ∈ {0, 1}`.
    Benchmark,
}

/// Voter expected welfare in an equilibrium, overall and conditional on the incumbent's type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WelfareReport {
    #[serde(rename = "class")]
    pub eq_class: EquilibriumClass,
    pub source: WelfareSource,
    pub eu_total: f64,
    pub eu_given_good: f64,
    pub eu_given_bad: f64,
}

/// Closed-form voter welfare for a PECB or an NPE-SF.
///
/// Uses the class's belief profile; the class need not be certified at `params`, only the
/// beliefs must be defined (interior `λ`). Other classes are evaluated on the game tree by
/// [`welfare`].
pub fn welfare_closed_form(class: EquilibriumClass, params: &ModelParams) -> Result<WelfareReport> {
    let beliefs = beliefs::belief_profile(class, params)?;
    let w = voter_continuations(params);
    let v = params.payoffs();
    let (r, b, l, d) = (params.rho(), params.beta(), params.lambda(), params.delta());
    let (vxx, vxy, vyx, vyy) = (v.v_xx, v.v_xy, v.v_yx, v.v_yy);
    let (g_gp, g_bp, g_pi) = (w.w_gb_gp, w.w_gb_bp, w.w_gb_pi);
    let (b_gp, b_bp, b_pi) = (w.w_bb_gp, w.w_bb_bp, w.w_bb_pi);
    let m = beliefs.mixing();
    // A disagreement lottery: the bureaucrat's policy wins with probability λ.
    let lot = |bureaucrat: f64, politician: f64| l * bureaucrat + (1.0 - l) * politician;
    let (good, bad) = match class {
        EquilibriumClass::Pecb => {
            let g = beliefs.gamma_x;
            let good = b * (r * (vxx + d * g_gp) + (1.0 - r) * lot(vyy + d * g_pi, vxy + d * g_gp))
                + (1.0 - b)
                    * (r * lot(vyx + d * b_pi, vxx + d * b_gp)
                        + (1.0 - r) * lot(vyy + d * b_pi, vxy + d * b_gp));
            let bad_good_b = r
                * (g * (vxx + d * g_bp) + (1.0 - g) * lot(vxx + d * g_bp, vyx + d * g_pi))
                + (1.0 - r)
                    * (g * lot(vyy + d * g_pi, vxy + d * g_bp) + (1.0 - g) * (vyy + d * g_pi));
            let bad_bad_b = r
                * (g * lot(vyx + d * b_pi, vxx + d * b_bp)
                    + (1.0 - g)
                        * (m * lot(vxx + d * b_bp, vyx + d * b_pi) + (1.0 - m) * (vyx + d * b_pi)))
                + (1.0 - r)
                    * (g * lot(vyy + d * b_pi, vxy + d * b_bp)
                        + (1.0 - g)
                            * (m * lot(vxy + d * b_bp, vyy + d * b_pi)
                                + (1.0 - m) * (vyy + d * b_pi)));
            (good, b * bad_good_b + (1.0 - b) * bad_bad_b)
        }
        EquilibriumClass::NpeSf => {
            let (gx, gy) = (beliefs.gamma_x, beliefs.gamma_y);
            let good = b * (r * (vxx + d * g_gp) + (1.0 - r) * (vyy + d * g_pi))
                + (1.0 - b)
                    * (r * lot(vyx + d * b_pi, vxx + d * b_gp) + (1.0 - r) * (vyy + d * b_pi));
            let bad_good_b = r
                * (gx * (vxx + d * g_bp) + (1.0 - gx) * lot(vxx + d * g_bp, vyx + d * g_pi))
                + (1.0 - r)
                    * (gy * lot(vyy + d * g_pi, vxy + d * g_bp) + (1.0 - gy) * (vyy + d * g_pi));
            let bad_bad_b = r
                * (gx * lot(vyx + d * b_pi, vxx + d * b_bp)
                    + (1.0 - gx)
                        * (m * lot(vxx + d * b_bp, vyx + d * b_pi) + (1.0 - m) * (vyx + d * b_pi)))
                + (1.0 - r)
                    * (gy
                        * (m * (vxy + d * b_bp) + (1.0 - m) * lot(vyy + d * b_pi, vxy + d * b_bp))
                        + (1.0 - gy) * (vyy + d * b_pi));
            (good, b * bad_good_b + (1.0 - b) * bad_bad_b)
        }
        other => {
            return Err(ModelError::UnsupportedClass {
                op: "closed-form welfare",
                class: other.to_string(),
            })
        }
    };
    let pi = params.pi();
    Ok(WelfareReport {
        eq_class: class,
        source: WelfareSource::ClosedForm,
        eu_total: pi * good + (1.0 - pi) * bad,
        eu_given_good: good,
        eu_given_bad: bad,
    })
}

/// Voter welfare in `class` at `params`, from the best available source: the benchmark
/// formulas at `λ ∈ {0, 1}`, the closed form for PECB and NPE-SF, and the exact game-tree
/// evaluation of the class's strategy profile otherwise.
pub fn welfare(class: EquilibriumClass, params: &ModelParams) -> Result<WelfareReport> {
    let l = params.lambda();
    if l == 0.0 || l == 1.0 {
        let bench = benchmark(params)?;
        let (total, good, bad) = if l == 0.0 {
            (
                bench.eu_toothless,
                bench.eu_toothless_good,
                bench.eu_toothless_bad,
            )
        } else {
            (
                bench.eu_dictatorial,
                bench.eu_dictatorial,
                bench.eu_dictatorial,
            )
        };
        return Ok(WelfareReport {
            eq_class: class,
            source: WelfareSource::Benchmark,
            eu_total: total,
            eu_given_good: good,
            eu_given_bad: bad,
        });
    }
    match class {
        EquilibriumClass::Pecb | EquilibriumClass::NpeSf => welfare_closed_form(class, params),
        _ => {
            let profile = simulator::build_profile_unchecked(class, params)?;
            let exact = simulator::exact_expected_utilities(&profile, params);
            Ok(WelfareReport {
                eq_class: class,
                source: WelfareSource::GameTree,
                eu_total: exact.voter_welfare,
                eu_given_good: exact.voter_welfare_given_good,
                eu_given_bad: exact.voter_welfare_given_bad,
            })
        }
    }
}

/// Voter welfare with a toothless (`λ = 0`) and a dictatorial (`λ = 1`) bureaucracy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenchmarkReport {
    /// Bad politicians' pandering probability with a toothless bureaucracy,
    /// `F₁ᴾ(δ(μ₂ᴾ + E))`.
    pub gamma_toothless: f64,
    pub eu_toothless: f64,
    pub eu_toothless_good: f64,
    pub eu_toothless_bad: f64,
    pub eu_dictatorial: f64,
    /// `eu_toothless − eu_dictatorial`.
    pub delta_eu: f64,
    /// Bureaucratic alignment at which the voter is indifferent between the benchmarks.
    pub beta_tilde: f64,
    pub rho_pi: f64,
    pub rho_gamma: f64,
    pub rho_tilde_beta: f64,
}

/// Benchmark welfare at `λ = 0` and `λ = 1` and the thresholds comparing them. The `λ` of
/// `params` is ignored.
pub fn benchmark(params: &ModelParams) -> Result<BenchmarkReport> {
    let v = params.payoffs();
    let (r, pi, b, d) = (params.rho(), params.pi(), params.beta(), params.delta());
    let (vxx, vxy, vyx, vyy) = (v.v_xx, v.v_xy, v.v_yx, v.v_yy);
    let (mx, my) = (v.mismatch_cost_x(), v.mismatch_cost_y());
    let g = params
        .rent_p1()
        .cdf(d * (params.mu2p() + params.office_rent()));
    let w_g = r * vxx + (1.0 - r) * vyy;
    let w_b = r * vyx + (1.0 - r) * vyy;
    let w_pi = pi * w_g + (1.0 - pi) * w_b;
    let good = r * (vxx + d * w_g) + (1.0 - r) * (vxy + d * w_g);
    let bad = r * (g * (vxx + d * w_b) + (1.0 - g) * (vyx + d * w_pi))
        + (1.0 - r) * (g * (vxy + d * w_b) + (1.0 - g) * (vyy + d * w_pi));
    let eu0 = pi * good + (1.0 - pi) * bad;
    let eu1 = (1.0 + d) * (r * (b * vxx + (1.0 - b) * vyx) + (1.0 - r) * vyy);
    let k = (1.0 - g) * pi + g;
    let lead = (1.0 - d * pi) * k + 2.0 * d * pi;
    let beta_tilde = lead / (1.0 + d) - (1.0 - r) * k * my / ((1.0 + d) * r * mx);
    let rho_pi =
        (1.0 - g) * my / ((1.0 - g + d * (2.0 - g - 2.0 * pi * (1.0 - g))) * mx + (1.0 - g) * my);
    let rho_gamma = my / (my + (1.0 - d * pi) * mx);
    let rho_tilde_beta = k * my / (lead * mx + k * my);
    Ok(BenchmarkReport {
        gamma_toothless: g,
        eu_toothless: eu0,
        eu_toothless_good: good,
        eu_toothless_bad: bad,
        eu_dictatorial: eu1,
        delta_eu: eu0 - eu1,
        beta_tilde,
        rho_pi,
        rho_gamma,
        rho_tilde_beta,
    })
}

fn require_jump_configuration(params: &ModelParams) -> Result<()> {
    let v = params.payoffs();
    let unit = v.v_xx == 1.0 && v.v_yy == 1.0 && v.v_xy == 0.0 && v.v_yx == 0.0;
    if params.delta() != 1.0 || !unit {
        return Err(ModelError::Precondition(
            "the welfare jump needs δ = 1 and unit state-matching payoffs".into(),
        ));
    }
    let e = params.office_rent();
    if !(e > 0.0 && e < 1.0) {
        return Err(ModelError::Precondition(format!(
            "the welfare jump needs E in (0, 1), got {e}"
        )));
    }
    Ok(())
}

/// `EU_PECB − EU_NPE-SF` at `λ = ℓ`: the welfare change when the equilibrium switches from
/// pandering to non-pandering. Negative means the switch raises welfare.
///
/// Requires `δ = 1`, unit state-matching payoffs and `E ∈ (0, 1)` with `ℓ ∈ (0, 1)`.
pub fn welfare_jump_at_ell(params: &ModelParams) -> Result<f64> {
    require_jump_configuration(params)?;
    let ell = certifier::ell(params);
    if !(ell > 0.0 && ell < 1.0) {
        return Err(ModelError::Precondition(format!(
            "ℓ = {ell} is not inside (0, 1)"
        )));
    }
    let at = params.with_lambda(ell)?;
    let pecb = welfare_closed_form(EquilibriumClass::Pecb, &at)?;
    let sf = welfare_closed_form(EquilibriumClass::NpeSf, &at)?;
    Ok(pecb.eu_total - sf.eu_total)
}

/// Compact form of `EU_PECB − EU_NPE-SF` at influence `lambda`, split by incumbent type.
///
/// Valid in the welfare-jump configuration with `U[0, 2]` rents; returns
/// `(total, given_good, given_bad)`.
pub fn welfare_jump_compact(params: &ModelParams, lambda: f64) -> (f64, f64, f64) {
    let (r, pi, b, e) = (
        params.rho(),
        params.pi(),
        params.beta(),
        params.office_rent(),
    );
    let l = lambda;
    let good = (1.0 - l) * (1.0 - r) * ((1.0 - l) * (1.0 - pi) * r - 1.0);
    let bad = 0.5 * (1.0 - b) * (1.0 - l) * (1.0 - r) * l * pi * r * (1.0 + pi * r * (1.0 - l)) * e;
    (pi * good + (1.0 - pi) * bad, good, bad)
}

/// Political selection in a PECB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SelectionReport {
    /// Probability that a bad politician is re-elected.
    pub eta: f64,
    /// Probability that a good politician holds office in period 2.
    pub zeta: f64,
    /// Office-rent level `E_ζ` governing how selection responds to influence.
    pub e_zeta: f64,
}

/// PECB mixing probabilities `(ξ, γ)`, defined for `λ ∈ [0, 1)`.
fn pecb_mixing(params: &ModelParams) -> Result<(f64, f64)> {
    let l = params.lambda();
    if l >= 1.0 {
        return Err(ModelError::EndpointLambda(l));
    }
    let xi = params
        .rent_b1()
        .cdf(beliefs::bad_bureaucrat_threshold(params));
    let gamma = bad_politician_cutoff(params, EquilibriumClass::Pecb, Policy::X, xi)
        .prob_x(params.rent_p1());
    Ok((xi, gamma))
}

/// Selection probabilities `η` and `ζ` from their explicit probability sums under PECB play,
/// and `E_ζ`. Defined for `λ ∈ [0, 1)`.
pub fn selection(params: &ModelParams) -> Result<SelectionReport> {
    let (xi, g) = pecb_mixing(params)?;
    let (r, pi, b, l) = (params.rho(), params.pi(), params.beta(), params.lambda());
    let eta = (1.0 - pi)
        * (g * (r * (b + (1.0 - b) * (1.0 - l)) + (1.0 - r) * (1.0 - l))
            + (1.0 - g) * (r * (b * l + (1.0 - b) * xi * l) + (1.0 - r) * (1.0 - b) * xi * l));
    // A good incumbent stays with probability `1 − λ` after a contested x, else a challenger
    // (good with probability π) takes over.
    let keep = l * pi + (1.0 - l);
    let zeta_good = r * (b + (1.0 - b) * keep) + (1.0 - r) * keep;
    let zeta_bad = g * (r * (1.0 - b) * l * pi + (1.0 - r) * l * pi)
        + (1.0 - g)
            * (r * (b * (1.0 - l) * pi + (1.0 - b) * (xi * (1.0 - l) * pi + (1.0 - xi) * pi))
                + (1.0 - r) * (b * pi + (1.0 - b) * (xi * (1.0 - l) * pi + (1.0 - xi) * pi)));
    let zeta = pi * zeta_good + (1.0 - pi) * zeta_bad;
    let c = 1.0 - 2.0 * l;
    let e_zeta = (2.0 + c * r * ((1.0 - b) * pi - 2.0 * b)) / (2.0 + (1.0 - b) * c * pi * r);
    Ok(SelectionReport { eta, zeta, e_zeta })
}

/// Compacted polynomial form of `ζ`. Diagnostic only: it does not agree with the explicit
/// sum used by [`selection`], which is authoritative.
pub fn zeta_compact(params: &ModelParams) -> Result<f64> {
    let (xi, g) = pecb_mixing(params)?;
    let (pi, b, l) = (params.pi(), params.beta(), params.lambda());
    Ok(pi
        * (2.0
            - l
            - g * (1.0 - l)
            - pi * (1.0 - g) * ((1.0 - l) + (1.0 - pi) * (1.0 - b) * l * xi)))
}
