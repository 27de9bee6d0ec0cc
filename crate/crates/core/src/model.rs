//! Model primitives: policies, types, payoffs, rent distributions and validated parameters.
//!
//! Every other module consumes a [`ModelParams`], which can only be obtained through
//! [`RawParams::validate`]. Raw parameters form a flat key-value schema that round-trips
//! exactly through its TOML representation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};

/// A policy, and equally a state of the world (states and policies share labels).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Policy {
    X,
    Y,
}

/// States of the world use the same two labels as policies.
pub type State = Policy;

impl Policy {
    /// Both labels, in the order `[X, Y]`.
    pub const ALL: [Policy; 2] = [Policy::X, Policy::Y];

    /// Array index used by strategy tables (`X = 0`, `Y = 1`).
    pub fn index(self) -> usize {
        match self {
            Policy::X => 0,
            Policy::Y => 1,
        }
    }

    /// The other label.
    pub fn other(self) -> Policy {
        match self {
            Policy::X => Policy::Y,
            Policy::Y => Policy::X,
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Policy::X => "x",
            Policy::Y => "y",
        })
    }
}

/// A policymaker's type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Type {
    Good,
    Bad,
}

impl Type {
    /// Both types, in the order `[Good, Bad]`.
    pub const ALL: [Type; 2] = [Type::Good, Type::Bad];

    /// Array index used by strategy tables (`Good = 0`, `Bad = 1`).
    pub fn index(self) -> usize {
        match self {
            Type::Good => 0,
            Type::Bad => 1,
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Type::Good => "good",
            Type::Bad => "bad",
        })
    }
}

/// The five classes of pure-strategy informative equilibria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EquilibriumClass {
    /// Pandering, correcting good bureaucracy.
    #[serde(rename = "PECB")]
    Pecb,
    /// Pandering, pandering good bureaucracy.
    #[serde(rename = "PEPB")]
    Pepb,
    /// Non-pandering, stand-firm good bureaucracy.
    #[serde(rename = "NPE-SF")]
    NpeSf,
    /// Non-pandering, forcing-subversive good bureaucracy.
    #[serde(rename = "NPE-FSV")]
    NpeFsv,
    /// Non-pandering, administrative-subversive good bureaucracy.
    #[serde(rename = "NPE-ASV")]
    NpeAsv,
}

impl EquilibriumClass {
    /// All classes in canonical order.
    pub const ALL: [EquilibriumClass; 5] = [
        EquilibriumClass::Pecb,
        EquilibriumClass::Pepb,
        EquilibriumClass::NpeSf,
        EquilibriumClass::NpeFsv,
        EquilibriumClass::NpeAsv,
    ];

    /// Canonical short label.
    pub fn label(self) -> &'static str {
        match self {
            EquilibriumClass::Pecb => "PECB",
            EquilibriumClass::Pepb => "PEPB",
            EquilibriumClass::NpeSf => "NPE-SF",
            EquilibriumClass::NpeFsv => "NPE-FSV",
            EquilibriumClass::NpeAsv => "NPE-ASV",
        }
    }

    /// True for the two pandering classes.
    pub fn is_pandering(self) -> bool {
        matches!(self, EquilibriumClass::Pecb | EquilibriumClass::Pepb)
    }

    /// True for the two subversive non-pandering classes.
    pub fn is_subversive(self) -> bool {
        matches!(self, EquilibriumClass::NpeFsv | EquilibriumClass::NpeAsv)
    }
}

impl fmt::Display for EquilibriumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for EquilibriumClass {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_uppercase();
        match norm.as_str() {
            "PECB" => Ok(EquilibriumClass::Pecb),
            "PEPB" => Ok(EquilibriumClass::Pepb),
            "NPESF" => Ok(EquilibriumClass::NpeSf),
            "NPEFSV" => Ok(EquilibriumClass::NpeFsv),
            "NPEASV" => Ok(EquilibriumClass::NpeAsv),
            _ => Err(ModelError::InvalidValue {
                key: "class".into(),
                value: s.into(),
            }),
        }
    }
}

/// Clamp a computed probability into `[0, 1]`.
///
/// Closed-form mixing probabilities are defined as `min{1, max{0, ·}}` of an expression;
/// every module routes through this helper so that clamping behaves identically everywhere.
pub fn clamp_probability(p: f64) -> f64 {
    p.clamp(0.0, 1.0)
}

/// Voter payoffs `v(p, s)`: first index is the policy, second the state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffMatrix {
    pub v_xx: f64,
    pub v_xy: f64,
    pub v_yx: f64,
    pub v_yy: f64,
}

impl PayoffMatrix {
    /// Unit payoff for a match, zero for a mismatch.
    pub const fn symmetric_unit() -> Self {
        PayoffMatrix {
            v_xx: 1.0,
            v_xy: 0.0,
            v_yx: 0.0,
            v_yy: 1.0,
        }
    }

    /// `v(policy, state)`.
    pub fn value(&self, policy: Policy, state: State) -> f64 {
        match (policy, state) {
            (Policy::X, Policy::X) => self.v_xx,
            (Policy::X, Policy::Y) => self.v_xy,
            (Policy::Y, Policy::X) => self.v_yx,
            (Policy::Y, Policy::Y) => self.v_yy,
        }
    }

    /// Mismatch cost in state x, `v(x,x) − v(y,x)`.
    pub fn mismatch_cost_x(&self) -> f64 {
        self.v_xx - self.v_yx
    }

    /// Mismatch cost in state y, `v(y,y) − v(x,y)`.
    pub fn mismatch_cost_y(&self) -> f64 {
        self.v_yy - self.v_xy
    }

    /// Check the strict preference for state-matching policies.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("v_xx", self.v_xx),
            ("v_xy", self.v_xy),
            ("v_yx", self.v_yx),
            ("v_yy", self.v_yy),
        ] {
            if !v.is_finite() {
                return Err(ModelError::NonFinite(name));
            }
        }
        if self.v_xx <= self.v_yx {
            return Err(ModelError::PayoffMonotonicity("v_xx must exceed v_yx"));
        }
        if self.v_yy <= self.v_xy {
            return Err(ModelError::PayoffMonotonicity("v_yy must exceed v_xy"));
        }
        Ok(())
    }
}

/// Ratio of policy-state mismatch costs, `Δ = [v(y,y) − v(x,y)] / [v(x,x) − v(y,x)]`.
pub fn mismatch_ratio(payoffs: &PayoffMatrix) -> f64 {
    payoffs.mismatch_cost_y() / payoffs.mismatch_cost_x()
}

/// Distribution families available for rents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RentFamily {
    /// Uniform on `[0, R̄]`.
    Uniform,
}

/// A rent distribution with full support on `[0, R̄]`.
///
/// The cdf/quantile/mean/partial-expectation interface is the extension point for further
/// families; only the uniform family is provided.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RentSpec {
    pub family: RentFamily,
    pub upper_bound: f64,
}

impl RentSpec {
    /// Uniform rents on `[0, upper]`.
    pub const fn uniform(upper: f64) -> Self {
        RentSpec {
            family: RentFamily::Uniform,
            upper_bound: upper,
        }
    }

    /// Mean rent `μ`.
    pub fn mean(&self) -> f64 {
        match self.family {
            RentFamily::Uniform => self.upper_bound / 2.0,
        }
    }

    /// `F(r)`, with `r` clamped to the support.
    pub fn cdf(&self, r: f64) -> f64 {
        match self.family {
            RentFamily::Uniform => {
                if r < 0.0 {
                    0.0
                } else if r >= self.upper_bound {
                    1.0
                } else {
                    r / self.upper_bound
                }
            }
        }
    }

    /// `F⁻¹(p)` for `p ∈ [0, 1]`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&p) {
            return Err(ModelError::QuantileRange(p));
        }
        Ok(match self.family {
            RentFamily::Uniform => p * self.upper_bound,
        })
    }

    /// Quantile map continued linearly beyond `[0, 1]`.
    ///
    /// Rent bounds of the form `F⁻¹(b)/c` are sometimes reported for levels `b > 1`, where
    /// the constraint they encode is slack; for the uniform family the natural continuation
    /// is `b·R̄`.
    pub fn quantile_extended(&self, p: f64) -> f64 {
        match self.family {
            RentFamily::Uniform => p * self.upper_bound,
        }
    }

    /// Partial expectation `∫₀^t r dF(r)`, with `t` clamped to the support.
    pub fn partial_expectation(&self, t: f64) -> f64 {
        match self.family {
            RentFamily::Uniform => {
                if self.upper_bound <= 0.0 || t <= 0.0 {
                    0.0
                } else {
                    let t = t.min(self.upper_bound);
                    t * t / (2.0 * self.upper_bound)
                }
            }
        }
    }

    /// Map a uniform draw `u ∈ [0, 1)` to a rent (inverse-transform sampling).
    pub fn sample_from_unit(&self, u: f64) -> f64 {
        match self.family {
            RentFamily::Uniform => u * self.upper_bound,
        }
    }

    fn validate(&self, name: &'static str) -> Result<()> {
        if !self.upper_bound.is_finite() {
            return Err(ModelError::NonFinite(name));
        }
        if self.upper_bound < 0.0 {
            return Err(ModelError::NegativeRentBound {
                name,
                value: self.upper_bound,
            });
        }
        Ok(())
    }
}

/// Unvalidated parameters in the flat key-value schema.
///
/// Keys: `rho, pi, beta, lambda, delta, E, v_xx, v_xy, v_yx, v_yy, rent_p1_upper,
/// rent_p2_upper, rent_b1_upper, rent_b2_upper`. All rents are uniform on `[0, upper]`.
/// Missing keys take the default values: `ρ = π = β = λ = 1/2`, `δ = 1`, `E = 1`,
/// unit matching payoffs and `U[0, 2]` rents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RawParams {
    pub rho: f64,
    pub pi: f64,
    pub beta: f64,
    pub lambda: f64,
    pub delta: f64,
    #[serde(rename = "E")]
    pub office_rent: f64,
    pub v_xx: f64,
    pub v_xy: f64,
    pub v_yx: f64,
    pub v_yy: f64,
    pub rent_p1_upper: f64,
    pub rent_p2_upper: f64,
    pub rent_b1_upper: f64,
    pub rent_b2_upper: f64,
}

impl Default for RawParams {
    fn default() -> Self {
        RawParams {
            rho: 0.5,
            pi: 0.5,
            beta: 0.5,
            lambda: 0.5,
            delta: 1.0,
            office_rent: 1.0,
            v_xx: 1.0,
            v_xy: 0.0,
            v_yx: 0.0,
            v_yy: 1.0,
            rent_p1_upper: 2.0,
            rent_p2_upper: 2.0,
            rent_b1_upper: 2.0,
            rent_b2_upper: 2.0,
        }
    }
}

impl RawParams {
    /// Every key of the schema, in canonical order.
    pub const KEYS: [&'static str; 14] = [
        "rho",
        "pi",
        "beta",
        "lambda",
        "delta",
        "E",
        "v_xx",
        "v_xy",
        "v_yx",
        "v_yy",
        "rent_p1_upper",
        "rent_p2_upper",
        "rent_b1_upper",
        "rent_b2_upper",
    ];

    fn slot(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "rho" => &mut self.rho,
            "pi" => &mut self.pi,
            "beta" => &mut self.beta,
            "lambda" => &mut self.lambda,
            "delta" => &mut self.delta,
            "E" => &mut self.office_rent,
            "v_xx" => &mut self.v_xx,
            "v_xy" => &mut self.v_xy,
            "v_yx" => &mut self.v_yx,
            "v_yy" => &mut self.v_yy,
            "rent_p1_upper" => &mut self.rent_p1_upper,
            "rent_p2_upper" => &mut self.rent_p2_upper,
            "rent_b1_upper" => &mut self.rent_b1_upper,
            "rent_b2_upper" => &mut self.rent_b2_upper,
            _ => return None,
        })
    }

    /// Read a value by schema key.
    pub fn get(&self, key: &str) -> Result<f64> {
        let mut copy = *self;
        copy.slot(key)
            .map(|v| *v)
            .ok_or_else(|| ModelError::UnknownKey(key.to_string()))
    }

    /// Set a value by schema key.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        let slot = self
            .slot(key)
            .ok_or_else(|| ModelError::UnknownKey(key.to_string()))?;
        *slot = value;
        Ok(())
    }

    /// Apply a `key=value` override.
    pub fn apply_override(&mut self, assignment: &str) -> Result<()> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| ModelError::Config(format!("expected key=value, got `{assignment}`")))?;
        let key = key.trim();
        let value = value.trim();
        let parsed: f64 = value.parse().map_err(|_| ModelError::InvalidValue {
            key: key.to_string(),
            value: value.to_string(),
        })?;
        self.set(key, parsed)
    }

    /// Parse a flat TOML document; absent keys keep their defaults.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| ModelError::Config(e.to_string()))
    }

    /// Serialize to a flat TOML document. Floats are written in shortest round-trip form.
    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("flat struct of floats always serializes")
    }

    /// Check every invariant and return the validated bundle.
    ///
    /// The error identifies the first violated invariant, in schema order.
    pub fn validate(&self) -> Result<ModelParams> {
        for (name, value) in [("rho", self.rho), ("pi", self.pi), ("beta", self.beta)] {
            if !value.is_finite() {
                return Err(ModelError::NonFinite(name));
            }
            if !(value > 0.0 && value < 1.0) {
                return Err(ModelError::ProbabilityRange {
                    name,
                    value,
                    range: "(0, 1)",
                });
            }
        }
        if !self.lambda.is_finite() {
            return Err(ModelError::NonFinite("lambda"));
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(ModelError::ProbabilityRange {
                name: "lambda",
                value: self.lambda,
                range: "[0, 1]",
            });
        }
        if !self.delta.is_finite() {
            return Err(ModelError::NonFinite("delta"));
        }
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(ModelError::ProbabilityRange {
                name: "delta",
                value: self.delta,
                range: "(0, 1]",
            });
        }
        if !self.office_rent.is_finite() {
            return Err(ModelError::NonFinite("E"));
        }
        let payoffs = PayoffMatrix {
            v_xx: self.v_xx,
            v_xy: self.v_xy,
            v_yx: self.v_yx,
            v_yy: self.v_yy,
        };
        payoffs.validate()?;
        let rents = [
            ("rent_p1_upper", RentSpec::uniform(self.rent_p1_upper)),
            ("rent_p2_upper", RentSpec::uniform(self.rent_p2_upper)),
            ("rent_b1_upper", RentSpec::uniform(self.rent_b1_upper)),
            ("rent_b2_upper", RentSpec::uniform(self.rent_b2_upper)),
        ];
        for (name, spec) in &rents {
            spec.validate(name)?;
        }
        Ok(ModelParams {
            rho: self.rho,
            pi: self.pi,
            beta: self.beta,
            lambda: self.lambda,
            delta: self.delta,
            office_rent: self.office_rent,
            payoffs,
            rent_p1: rents[0].1,
            rent_p2: rents[1].1,
            rent_b1: rents[2].1,
            rent_b2: rents[3].1,
        })
    }
}

/// Validated model primitives. Immutable; obtain through [`RawParams::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    rho: f64,
    pi: f64,
    beta: f64,
    lambda: f64,
    delta: f64,
    office_rent: f64,
    payoffs: PayoffMatrix,
    rent_p1: RentSpec,
    rent_p2: RentSpec,
    rent_b1: RentSpec,
    rent_b2: RentSpec,
}

impl ModelParams {
    /// Probability that the state is x.
    pub fn rho(&self) -> f64 {
        self.rho
    }
    /// Prior probability that a politician is good.
    pub fn pi(&self) -> f64 {
        self.pi
    }
    /// Probability that the bureaucrat is good.
    pub fn beta(&self) -> f64 {
        self.beta
    }
    /// Probability that a disagreement resolves in the bureaucrat's favour.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
    /// Common discount factor.
    pub fn delta(&self) -> f64 {
        self.delta
    }
    /// Per-period office rent `E` of the politician in charge.
    pub fn office_rent(&self) -> f64 {
        self.office_rent
    }
    /// Voter (and good-type) payoffs.
    pub fn payoffs(&self) -> &PayoffMatrix {
        &self.payoffs
    }
    /// Politician's period-1 rent distribution.
    pub fn rent_p1(&self) -> &RentSpec {
        &self.rent_p1
    }
    /// Politician's period-2 rent distribution.
    pub fn rent_p2(&self) -> &RentSpec {
        &self.rent_p2
    }
    /// Bureaucrat's period-1 rent distribution.
    pub fn rent_b1(&self) -> &RentSpec {
        &self.rent_b1
    }
    /// Bureaucrat's period-2 rent distribution.
    pub fn rent_b2(&self) -> &RentSpec {
        &self.rent_b2
    }
    /// Mean period-2 politician rent `μ₂ᴾ`.
    pub fn mu2p(&self) -> f64 {
        self.rent_p2.mean()
    }
    /// Mean period-2 bureaucrat rent `μ₂ᴮ`.
    pub fn mu2b(&self) -> f64 {
        self.rent_b2.mean()
    }

    /// Back to the flat key-value schema.
    pub fn to_raw(&self) -> RawParams {
        RawParams {
            rho: self.rho,
            pi: self.pi,
            beta: self.beta,
            lambda: self.lambda,
            delta: self.delta,
            office_rent: self.office_rent,
            v_xx: self.payoffs.v_xx,
            v_xy: self.payoffs.v_xy,
            v_yx: self.payoffs.v_yx,
            v_yy: self.payoffs.v_yy,
            rent_p1_upper: self.rent_p1.upper_bound,
            rent_p2_upper: self.rent_p2.upper_bound,
            rent_b1_upper: self.rent_b1.upper_bound,
            rent_b2_upper: self.rent_b2.upper_bound,
        }
    }

    /// The same parameters with a different bureaucratic influence.
    pub fn with_lambda(&self, lambda: f64) -> Result<ModelParams> {
        let mut raw = self.to_raw();
        raw.lambda = lambda;
        raw.validate()
    }

    /// The same parameters with one schema key changed.
    pub fn with(&self, key: &str, value: f64) -> Result<ModelParams> {
        let mut raw = self.to_raw();
        raw.set(key, value)?;
        raw.validate()
    }

    /// Reject the endpoints `λ ∈ {0, 1}`, which only benchmark operations admit.
    pub fn require_interior_lambda(&self) -> Result<()> {
        if self.lambda > 0.0 && self.lambda < 1.0 {
            Ok(())
        } else {
            Err(ModelError::EndpointLambda(self.lambda))
        }
    }

    /// Mismatch-cost ratio `Δ` of these parameters.
    pub fn mismatch_ratio(&self) -> f64 {
        mismatch_ratio(&self.payoffs)
    }

    /// Prior probability of a type for a politician.
    pub fn politician_prior(&self, t: Type) -> f64 {
        match t {
            Type::Good => self.pi,
            Type::Bad => 1.0 - self.pi,
        }
    }

    /// Prior probability of a type for the bureaucrat.
    pub fn bureaucrat_prior(&self, t: Type) -> f64 {
        match t {
            Type::Good => self.beta,
            Type::Bad => 1.0 - self.beta,
        }
    }

    /// Probability of a state.
    pub fn state_prob(&self, s: State) -> f64 {
        match s {
            Policy::X => self.rho,
            Policy::Y => 1.0 - self.rho,
        }
    }
}
