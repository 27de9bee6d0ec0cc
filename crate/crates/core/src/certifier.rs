//! Existence conditions of the five equilibrium classes and the named thresholds behind them.
//!
//! A certificate lists every condition of a class in order, each with a signed slack
//! (positive means satisfied with margin) expressed in the natural unit of its inequality:
//! payoff units for rent and office-rent conditions, probability units for belief bounds and
//! the bare parameter for bounds on `λ` or `ρ`.

use serde::Serialize;

use crate::beliefs::{self, BeliefProfile};
use crate::error::{ModelError, Result};
use crate::model::{EquilibriumClass, ModelParams, Policy};

/// One existence condition evaluated at a parameter point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition {
    /// Short machine-friendly identifier, e.g. `office_rent`.
    pub name: &'static str,
    /// Position in the class's condition list, e.g. `ii)`.
    pub label: &'static str,
    /// The inequality being checked, written out in plain text.
    pub anchor: &'static str,
    pub satisfied: bool,
    /// Signed distance to the bound; positive when satisfied with margin.
    pub slack: f64,
}

/// Per-condition verdicts for one class at one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumCertificate {
    #[serde(rename = "class")]
    pub eq_class: EquilibriumClass,
    pub verdict: bool,
    pub conditions: Vec<Condition>,
    pub beliefs: BeliefProfile,
}

impl EquilibriumCertificate {
    /// Conditions that fail.
    pub fn failing(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.satisfied)
    }

    /// Names of the failing conditions, comma separated.
    pub fn failing_names(&self) -> String {
        self.failing()
            .map(|c| c.name)
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Look up a condition by name.
    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

/// Every named threshold of the model at one parameter point.
///
/// Belief-dependent entries use the beliefs of the class the set was computed for.
/// Entries that are undefined at the point (e.g. a square root of a negative number) are NaN;
/// bounds that do not bind are reported as `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdSet {
    #[serde(rename = "class")]
    pub eq_class: EquilibriumClass,
    /// `Δ_CB = δρ(1−λ)[Π_B(x,x) − π]`.
    pub delta_cb: f64,
    /// `Δ_PB = δρ(1−λ)[Π_B(x,y) − π]`.
    pub delta_pb: f64,
    /// `δρ(1−λ)[Π_B(y,y) − π]`, the subversion bound of the non-pandering classes.
    pub delta_sv: f64,
    /// Largest `μ₂ᴮ` compatible with the pandering classes' bound on `ξ`.
    pub mu_bar_pe: f64,
    /// Influence level above which the non-pandering office-rent condition holds.
    pub ell: f64,
    /// `v(y,y) − v(x,y) − δρ(1−π)(1−λ)[v(x,x) − v(y,x)]`.
    pub pandering_rhs: f64,
    /// `P = pandering_rhs − δE`; positive means good politicians do not pander.
    pub p_value: f64,
    /// `G = β(2λ−1) − (1−β)[1 − λ(1−ψ)]`.
    pub g_value: f64,
    /// `H = 1 − βλ / (1 − λ[1 − ψ(1−β)])`.
    pub h_value: f64,
    /// `Ψ̃`: the mixing level at which `G` and `H` change sign.
    pub psi_tilde: f64,
    /// `Ψ̂`: informativeness bound on `ψ` with a subversive bureaucracy.
    pub psi_hat: f64,
    /// `Ψ̃*`: bound on `ψ` keeping `γ(y) < 1` with an administrative-subversive bureaucracy.
    pub psi_star: f64,
    /// `Λ̃*`: influence level above which `Ψ̃* > 0`.
    pub lambda_star: f64,
    /// `Λ̃′`: influence level below which `Ψ̃* < (1−λ)/(λ(1−β))`.
    pub lambda_prime: f64,
    /// `ℰ(λ) = pandering_rhs / δ`: office rents must stay below it for non-pandering.
    pub e_script: f64,
    /// `g(λ) = pandering_rhs / δ`: office rents must reach it for pandering.
    pub g_fun: f64,
    /// `f(λ)`: office rents must stay below it for `γ < 1` in a PECB.
    pub f_fun: f64,
    /// Largest `μ₂ᴮ` compatible with the stand-firm informativeness bound on `ψ`.
    pub mu_hat: f64,
}

/// `δρ(1−λ)[posterior − π]`: the mismatch ratio at which a good bureaucrat is indifferent
/// between confirming and contesting, given the posterior a re-elected incumbent carries.
pub fn bureaucrat_delta_bound(params: &ModelParams, posterior: f64) -> f64 {
    params.delta() * params.rho() * (1.0 - params.lambda()) * (posterior - params.pi())
}

/// `v(y,y) − v(x,y) − δρ(1−π)(1−λ)[v(x,x) − v(y,x)]`.
pub fn pandering_rhs(params: &ModelParams) -> f64 {
    let v = params.payoffs();
    v.mismatch_cost_y()
        - params.delta()
            * params.rho()
            * (1.0 - params.pi())
            * (1.0 - params.lambda())
            * v.mismatch_cost_x()
}

/// `ℓ = 1 − (v(y,y) − v(x,y) − δE) / (δρ(1−π)[v(x,x) − v(y,x)])`.
pub fn ell(params: &ModelParams) -> f64 {
    let v = params.payoffs();
    let d = params.delta();
    1.0 - (v.mismatch_cost_y() - d * params.office_rent())
        / (d * params.rho() * (1.0 - params.pi()) * v.mismatch_cost_x())
}

/// `Ψ̃ = β/(1−β) − (1−λ)/(λ(1−β))`.
pub fn psi_tilde(params: &ModelParams) -> f64 {
    let (l, b) = (params.lambda(), params.beta());
    b / (1.0 - b) - (1.0 - l) / (l * (1.0 - b))
}

/// `Ψ̃* = Ψ̃ + βρλ(1−2λ)μ₂ᴾ / (λ(1−β)(μ₂ᴾ+E))`.
pub fn psi_star(params: &ModelParams) -> f64 {
    let (l, b, r) = (params.lambda(), params.beta(), params.rho());
    let mu = params.mu2p();
    psi_tilde(params)
        + b * r * l * (1.0 - 2.0 * l) * mu / (l * (1.0 - b) * (mu + params.office_rent()))
}

fn lambda_root(params: &ModelParams, lead: f64, cross: f64) -> f64 {
    let (b, r) = (params.beta(), params.rho());
    let mu = params.mu2p();
    let a = mu + params.office_rent();
    let k = b * r * mu;
    let radicand = 1.0 + a * (lead * lead * a - 2.0 * cross * k) / (k * k);
    if radicand < 0.0 || k == 0.0 {
        return f64::NAN;
    }
    (lead * a + k * (1.0 - radicand.sqrt())) / (4.0 * k)
}

/// `Λ̃*`: the influence level above which `Ψ̃* > 0`.
pub fn lambda_star(params: &ModelParams) -> f64 {
    let b = params.beta();
    lambda_root(params, 1.0 + b, 3.0 - b)
}

/// `Λ̃′`: the influence level below which `Ψ̃*` is tighter than `(1−λ)/(λ(1−β))`.
pub fn lambda_prime(params: &ModelParams) -> f64 {
    let b = params.beta();
    lambda_root(params, 2.0 + b, 6.0 - b)
}

/// Every named threshold for `class` at `params`.
pub fn thresholds(class: EquilibriumClass, params: &ModelParams) -> Result<ThresholdSet> {
    let beliefs = beliefs::belief_profile(class, params)?;
    let info = beliefs::informativeness(params, &beliefs);
    let (d, l, b, r, pi) = (
        params.delta(),
        params.lambda(),
        params.beta(),
        params.rho(),
        params.pi(),
    );
    let m = beliefs.mixing();
    let mu = params.mu2p();
    let scale = d * pi * r * (1.0 - l);
    if scale <= 0.0 {
        return Err(ModelError::Structural(
            "δπρ(1−λ) must be positive for rent bounds".into(),
        ));
    }
    let pe_bound = beliefs::pandering_mixing_bound(params);
    let mu_bar_pe = if pe_bound > 1.0 {
        f64::INFINITY
    } else {
        params.rent_b1().quantile(pe_bound)? / scale
    };
    let rhs = pandering_rhs(params);
    let d_sf = 1.0 - l * (1.0 - m * (1.0 - b));
    if d_sf <= 0.0 {
        return Err(ModelError::Structural(
            "1 − λ[1 − ψ(1−β)] must be positive".into(),
        ));
    }
    let d_pe = 1.0 - l * (1.0 + m * (1.0 - b));
    let f_fun = if d_pe > 0.0 {
        params.rent_p1().upper_bound / d - mu + b * r * l * (1.0 - l) * mu / d_pe
    } else {
        f64::NAN
    };
    let psi_hat = pe_bound * info.big_gamma + b / (1.0 - b) * info.gamma_hat;
    let sf_bound = pe_bound * info.big_gamma;
    Ok(ThresholdSet {
        eq_class: class,
        delta_cb: bureaucrat_delta_bound(params, beliefs.pi_b.x_x),
        delta_pb: bureaucrat_delta_bound(params, beliefs.pi_b.x_y),
        delta_sv: bureaucrat_delta_bound(params, beliefs.pi_b.y_y),
        mu_bar_pe,
        ell: ell(params),
        pandering_rhs: rhs,
        p_value: rhs - d * params.office_rent(),
        g_value: b * (2.0 * l - 1.0) - (1.0 - b) * (1.0 - l * (1.0 - m)),
        h_value: 1.0 - b * l / d_sf,
        psi_tilde: psi_tilde(params),
        psi_hat,
        psi_star: psi_star(params),
        lambda_star: lambda_star(params),
        lambda_prime: lambda_prime(params),
        e_script: rhs / d,
        g_fun: rhs / d,
        f_fun,
        mu_hat: params.rent_b1().quantile_extended(sf_bound) / scale,
    })
}

struct Builder {
    conditions: Vec<Condition>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            conditions: Vec::new(),
        }
    }

    /// `slack ≥ 0`.
    fn weak(&mut self, name: &'static str, label: &'static str, anchor: &'static str, slack: f64) {
        self.push(name, label, anchor, slack, slack >= 0.0);
    }

    /// `slack > 0`.
    fn strict(
        &mut self,
        name: &'static str,
        label: &'static str,
        anchor: &'static str,
        slack: f64,
    ) {
        self.push(name, label, anchor, slack, slack > 0.0);
    }

    fn push(
        &mut self,
        name: &'static str,
        label: &'static str,
        anchor: &'static str,
        slack: f64,
        satisfied: bool,
    ) {
        self.conditions.push(Condition {
            name,
            label,
            anchor,
            satisfied,
            slack,
        });
    }
}

const PANDERING_ANCHOR: &str =
    "δE ≥ v(y,y) − v(x,y) − δρ(1−π)(1−λ)[v(x,x) − v(y,x)] (good politicians pander)";
const NON_PANDERING_ANCHOR: &str =
    "δE < v(y,y) − v(x,y) − δρ(1−π)(1−λ)[v(x,x) − v(y,x)] (good politicians match the state)";
const REELECTION_VALUE_ANCHOR: &str = "v(x,x) − v(y,x) + δE + δρ(1−π)(1−λ)[v(x,x) − v(y,x)] > 0 \
     (good politicians propose x in state x; automatic when E ≥ 0)";

/// Value to a good politician of x over y in state x, per unit of probability shift:
/// the policy gain plus the value of re-election.
fn reelection_value(params: &ModelParams) -> f64 {
    let mx = params.payoffs().mismatch_cost_x();
    let d = params.delta();
    mx + d * params.office_rent()
        + d * params.rho() * (1.0 - params.pi()) * (1.0 - params.lambda()) * mx
}

const PE_MIXING_ANCHOR: &str = "ξ < (1−λ)/(λ(1−β)), i.e. μ₂ᴮ < F₁ᴮ⁻¹((1−λ)/(λ(1−β))) / (δπρ(1−λ))";

/// Evaluate every existence condition of `class` at `params`.
///
/// Violated conditions are reported as data; the only errors are parameters outside the
/// domain of the belief computations (endpoint `λ`, unreachable policies).
pub fn certify(class: EquilibriumClass, params: &ModelParams) -> Result<EquilibriumCertificate> {
    let beliefs = beliefs::belief_profile(class, params)?;
    let t = thresholds(class, params)?;
    let info = beliefs::informativeness(params, &beliefs);
    let (l, b, r) = (params.lambda(), params.beta(), params.rho());
    let m = beliefs.mixing();
    let delta_ratio = params.mismatch_ratio();
    let upper = params.rent_p1().upper_bound;
    let threshold_of = |state: Policy| {
        beliefs::bad_politician_cutoff(params, class, state, m)
            .threshold()
            .unwrap_or(f64::INFINITY)
    };
    let pe_bound = beliefs::pandering_mixing_bound(params);
    let mut c = Builder::new();
    match class {
        EquilibriumClass::Pecb => {
            c.weak("office_rent", "i)", PANDERING_ANCHOR, -t.p_value);
            c.weak(
                "good_bureaucrat",
                "ii)",
                "Δ ≥ δρ(1−λ)[Π_B(x,·) − π] (good bureaucrats contest x in state y; ties contest)",
                delta_ratio - t.delta_cb,
            );
            c.strict(
                "rent_support",
                "iii)",
                "R̄₁ᴾ > δ(μ₂ᴾ+E) − δβρλ(1−λ)μ₂ᴾ / (1 − λ[1 + ξ(1−β)]) (γ < 1)",
                upper - threshold_of(Policy::X),
            );
            c.strict("mixing_bound", "iv)", PE_MIXING_ANCHOR, pe_bound - m);
        }
        EquilibriumClass::Pepb => {
            c.weak("office_rent", "i)", PANDERING_ANCHOR, -t.p_value);
            c.weak(
                "good_bureaucrat",
                "ii)",
                "Δ ≤ δρ(1−λ)[Π_B(x,y) − π] (good bureaucrats confirm x in state y)",
                t.delta_pb - delta_ratio,
            );
            c.strict(
                "rent_support",
                "iii)",
                "R̄₁ᴾ > δ(μ₂ᴾ+E) − δβρλμ₂ᴾ / (1 − λ(1+ξ)(1−β)) (γ(y) < 1)",
                upper - threshold_of(Policy::Y),
            );
            c.strict("mixing_bound", "iv)", PE_MIXING_ANCHOR, pe_bound - m);
        }
        EquilibriumClass::NpeSf => {
            c.strict("office_rent", "i)", NON_PANDERING_ANCHOR, t.p_value);
            c.weak(
                "good_bureaucrat",
                "ii)",
                "Δ ≥ δρ(1−λ)[Π_B(y,y) − π] (good bureaucrats stand firm on y in state y)",
                delta_ratio - t.delta_sv,
            );
            c.strict(
                "rent_support",
                "iii)",
                "R̄₁ᴾ > δ(μ₂ᴾ+E) − δβρλ(1−λ)μ₂ᴾ / (1 − λ[1 + ψ(1−β)]) (γ(x) < 1)",
                upper - threshold_of(Policy::X),
            );
            c.strict(
                "rho_hat",
                "iv)",
                "ρ > ρ̂ = γ(y) / (1 − γ(x) + γ(y))",
                r - info.rho_hat,
            );
            c.strict(
                "mixing_bound",
                "v)",
                "ψ < Γ(1−λ)/(λ(1−β))",
                info.binding_bound_on_mixing - m,
            );
            c.strict(
                "reelection_value",
                "vi)",
                REELECTION_VALUE_ANCHOR,
                reelection_value(params),
            );
        }
        EquilibriumClass::NpeFsv => {
            c.strict("office_rent", "i)", NON_PANDERING_ANCHOR, t.p_value);
            c.weak(
                "good_bureaucrat",
                "ii)",
                "Δ ≤ δρ(1−λ)[Π_B(y,y) − π] (good bureaucrats subvert y in state y)",
                t.delta_sv - delta_ratio,
            );
            c.strict(
                "rent_support",
                "iii)",
                "R̄₁ᴾ > δ(μ₂ᴾ+E) − δβρλ(1−2λ)μ₂ᴾ / (1 − λ[1 + β − ψ(1−β)]) (γ(y) < 1)",
                upper - threshold_of(Policy::Y),
            );
            c.weak(
                "rho_hat",
                "iv)",
                "ρ ≥ ρ̂ = γ(y) / (1 − γ(x) + γ(y))",
                r - info.rho_hat,
            );
            c.strict(
                "lambda_range",
                "v)",
                "λ < min{1/(2β), 2/(2+β)}",
                (1.0 / (2.0 * b)).min(2.0 / (2.0 + b)) - l,
            );
            let lower = m - t.psi_tilde;
            let upper_gap = t.psi_hat - m;
            c.push(
                "psi_window",
                "vi)",
                "Ψ̃ ≤ ψ < Ψ̂ (subversion forces re-election; outcome x stays informative)",
                lower.min(upper_gap),
                lower >= 0.0 && upper_gap > 0.0,
            );
            c.strict(
                "reelection_value",
                "vii)",
                REELECTION_VALUE_ANCHOR,
                reelection_value(params),
            );
        }
        EquilibriumClass::NpeAsv => {
            c.weak("office_rent", "i)", PANDERING_ANCHOR, -t.p_value);
            c.weak(
                "good_bureaucrat",
                "ii)",
                "Δ ≤ δρ(1−λ)[Π_B(y,y) − π] (good bureaucrats subvert y in state y)",
                t.delta_sv - delta_ratio,
            );
            c.strict("lambda_star", "iii)", "λ > Λ̃* (Ψ̃* > 0)", l - t.lambda_star);
            c.strict(
                "rent_support",
                "iii′)",
                "R̄₁ᴾ > δ(μ₂ᴾ+E) − δβρλ(1−2λ)μ₂ᴾ / (1 − λ[1 + β − ψ(1−β)])",
                upper - threshold_of(Policy::Y),
            );
            c.strict(
                "psi_bound",
                "vi)",
                "ψ < min{Ψ̃*, (1−λ)/(λ(1−β))}",
                t.psi_star.min(pe_bound) - m,
            );
            c.strict(
                "psi_below_tilde",
                "vii)",
                "ψ < Ψ̃ (G > 0: good politicians keep y in state y; implied by vi) when μ₂ᴾ + E > 0)",
                t.psi_tilde - m,
            );
        }
    }
    let verdict = c.conditions.iter().all(|x| x.satisfied);
    Ok(EquilibriumCertificate {
        eq_class: class,
        verdict,
        conditions: c.conditions,
        beliefs,
    })
}

/// Certificates for all five classes, in canonical order. Several verdicts may be true at
/// once (coexisting equilibria).
///
/// The five classes exhaust the informative equilibria when bureaucratic influence is small;
/// for large `λ` the list is only known to cover these classes.
pub fn classify_all(params: &ModelParams) -> Result<Vec<EquilibriumCertificate>> {
    EquilibriumClass::ALL
        .iter()
        .map(|&class| certify(class, params))
        .collect()
}

/// Locate a sign change of `f(λ)` in `[lo, hi]` by bisection, to within `tol` in `λ`.
///
/// `f` receives `params` with `λ` replaced. Errors if `f` has the same sign at both ends.
pub fn bisect_lambda<F>(params: &ModelParams, lo: f64, hi: f64, tol: f64, f: F) -> Result<f64>
where
    F: Fn(&ModelParams) -> Result<f64>,
{
    let eval = |l: f64| -> Result<f64> { f(&params.with_lambda(l)?) };
    let (mut a, mut b) = (lo, hi);
    let fa = eval(a)?;
    let fb = eval(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(ModelError::Precondition(format!(
            "no sign change on [{lo}, {hi}] ({fa} vs {fb})"
        )));
    }
    let left_sign = fa.signum();
    while b - a > tol {
        let mid = 0.5 * (a + b);
        let fm = eval(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == left_sign {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// The `λ` in `[lo, hi]` at which the slack of condition `name` of `class` changes sign,
/// located to `1e-10`.
pub fn condition_boundary(
    class: EquilibriumClass,
    params: &ModelParams,
    name: &str,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    bisect_lambda(params, lo, hi, 1e-10, |p| {
        let cert = certify(class, p)?;
        cert.condition(name).map(|c| c.slack).ok_or_else(|| {
            ModelError::Precondition(format!("class {class} has no condition `{name}`"))
        })
    })
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

    fn fig4(lambda: f64) -> ModelParams {
        params(|r| {
            r.office_rent = 0.85;
            r.beta = 0.9;
            r.rho = 0.85;
            r.pi = 0.7;
            r.lambda = lambda;
        })
    }

    #[test]
    fn mu_bar_pe_example() {
        let p = params(|r| {
            r.lambda = 0.8;
            r.beta = 0.5;
        });
        let t = thresholds(EquilibriumClass::Pecb, &p).unwrap();
        assert_abs_diff_eq!(t.mu_bar_pe, 20.0, epsilon = 1e-12);
        // Direct check of the bound it encodes: ξ at μ₂ᴮ just below equals the bound.
        let q = params(|r| {
            r.lambda = 0.8;
            r.beta = 0.5;
            r.rent_b2_upper = 2.0 * 20.0;
        });
        assert_abs_diff_eq!(
            beliefs::xi(&q).unwrap(),
            beliefs::pandering_mixing_bound(&q),
            epsilon = 1e-12
        );
    }

    #[test]
    fn ell_example() {
        assert_abs_diff_eq!(ell(&fig4(0.5)), 1.0 - 0.15 / 0.255, epsilon = 1e-15);
        assert_abs_diff_eq!(ell(&fig4(0.5)), 0.41176, epsilon = 1e-5);
    }

    #[test]
    fn delta_cb_example() {
        let p = params(|_| {});
        let posterior = 0.5 / (0.5 + 0.5 * 0.5);
        assert_abs_diff_eq!(
            bureaucrat_delta_bound(&p, posterior),
            1.0 / 24.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn pecb_certified_in_unit_configuration() {
        for &(rho, pi, beta, lambda) in &[
            (0.5, 0.5, 0.5, 0.5),
            (0.2, 0.8, 0.3, 0.05),
            (0.9, 0.1, 0.9, 0.95),
            (0.5, 0.5, 0.25, 0.33),
        ] {
            let p = params(|r| {
                r.rho = rho;
                r.pi = pi;
                r.beta = beta;
                r.lambda = lambda;
            });
            let cert = certify(EquilibriumClass::Pecb, &p).unwrap();
            assert!(cert.verdict, "{:?}", cert.conditions);
        }
    }

    #[test]
    fn npe_sf_examples() {
        let low = certify(EquilibriumClass::NpeSf, &fig4(0.3)).unwrap();
        assert!(!low.verdict);
        assert!(!low.condition("office_rent").unwrap().satisfied);
        let high = certify(EquilibriumClass::NpeSf, &fig4(0.6)).unwrap();
        assert!(high.verdict, "{:?}", high.conditions);
    }

    #[test]
    fn unit_configuration_rules_out_non_pandering() {
        let p = params(|_| {});
        for cert in classify_all(&p).unwrap() {
            if !cert.eq_class.is_pandering() && cert.eq_class != EquilibriumClass::NpeAsv {
                assert!(!cert.verdict);
                assert!(!cert.condition("office_rent").unwrap().satisfied);
            }
        }
    }

    #[test]
    fn near_one_influence_flips_to_stand_firm() {
        let p = fig4(1.0 - 1e-6);
        assert!(!certify(EquilibriumClass::Pecb, &p).unwrap().verdict);
        assert!(certify(EquilibriumClass::NpeSf, &p).unwrap().verdict);
    }

    #[test]
    fn boundary_bisection_finds_ell() {
        let p = fig4(0.5);
        let b = condition_boundary(EquilibriumClass::NpeSf, &p, "office_rent", 0.1, 0.9).unwrap();
        assert_abs_diff_eq!(b, ell(&p), epsilon = 1e-9);
    }

    #[test]
    fn lambda_thresholds_ordered_when_defined() {
        for &beta in &[0.3, 0.6, 0.9] {
            let p = params(|r| r.beta = beta);
            let (s, pr) = (lambda_star(&p), lambda_prime(&p));
            if s.is_finite() && pr.is_finite() {
                assert!(s > 0.5 && s < 1.0, "{s}");
                assert!(pr > s && pr < 1.0, "{pr}");
            }
        }
    }

    #[test]
    fn psi_star_below_tilde_iff_lambda_above_half() {
        for &l in &[0.2, 0.45, 0.55, 0.8] {
            let p = params(|r| r.lambda = l);
            assert_eq!(psi_star(&p) < psi_tilde(&p), l > 0.5);
        }
    }

    #[test]
    fn certificate_json_shape() {
        let cert = certify(EquilibriumClass::Pecb, &params(|_| {})).unwrap();
        let json = serde_json::to_value(&cert).unwrap();
        assert_eq!(json["class"], "PECB");
        assert!(json["verdict"].as_bool().unwrap());
        let first = &json["conditions"][0];
        for key in ["name", "anchor", "satisfied", "slack"] {
            assert!(first.get(key).is_some());
        }
    }
}
