//! Independent verification engine: executable strategy profiles, an exact game-tree
//! evaluator, a seeded Monte Carlo runner and a best-response audit.

mod audit;
mod exact;
mod monte_carlo;
mod profile;

pub use audit::{
    audit_with_tolerance, best_response_audit, Deviation, DeviationReport, InfoSet, InfoSetKey,
    Player, DEFAULT_TOLERANCE, VOTER_TIE_TOLERANCE,
};
pub use exact::{exact_expected_utilities, ExactReport};
pub use monte_carlo::{simulate, simulate_period2, Estimate, Period2Result, SimulationResult};
pub use profile::{build_profile, build_profile_unchecked, ActionRule, StrategyProfile, VoterRule};
