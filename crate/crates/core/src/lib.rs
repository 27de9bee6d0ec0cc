//! Certification and independent verification of the pure-strategy perfect Bayesian
//! equilibria of a two-period politician–bureaucrat–voter agency game.
//!
//! The crate is organised as a pipeline:
//!
//! * [`model`] validates primitives into a [`ModelParams`] bundle;
//! * [`continuation`] evaluates period-2 play and continuation values;
//! * [`beliefs`] computes mixing probabilities and posteriors for each equilibrium class;
//! * [`certifier`] evaluates every existence condition and the named thresholds;
//! * [`welfare`] gives closed-form voter welfare, benchmarks and selection measures;
//! * [`simulator`] builds executable strategy profiles and checks them with an exact
//!   game-tree evaluator, a seeded Monte Carlo runner and a best-response audit.

pub mod beliefs;
pub mod certifier;
pub mod continuation;
pub mod error;
pub mod model;
pub mod simulator;
pub mod welfare;

pub use beliefs::{BeliefProfile, InformativenessReport, NpeVariant};
pub use certifier::{
    certify, classify_all, thresholds, Condition, EquilibriumCertificate, ThresholdSet,
};
pub use continuation::{ContinuationTable, VoterContinuationTable};
pub use error::{ModelError, Result};
pub use model::{
    mismatch_ratio, EquilibriumClass, ModelParams, PayoffMatrix, Policy, RawParams, RentFamily,
    RentSpec, State, Type,
};
pub use simulator::{
    best_response_audit, build_profile, build_profile_unchecked, exact_expected_utilities,
    simulate, ActionRule, DeviationReport, ExactReport, SimulationResult, StrategyProfile,
    VoterRule,
};
pub use welfare::{BenchmarkReport, SelectionReport, WelfareReport, WelfareSource};
