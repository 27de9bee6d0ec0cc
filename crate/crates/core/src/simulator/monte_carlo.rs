//! Seeded, parallel Monte Carlo plays of the full two-period game.
//!
//! Replication `i` draws from its own ChaCha8 stream (`seed`, stream `i`), so results do not
//! depend on how replications are scheduled across threads. Replications are processed in
//! fixed-size chunks whose partial sums are combined in chunk order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::continuation::period2_action;
use crate::error::{ModelError, Result};
use crate::model::{ModelParams, Policy, State, Type};

use super::exact::lottery;
use super::profile::StrategyProfile;

const CHUNK: u64 = 4096;

/// A sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    /// Number of observations the mean is based on.
    pub count: u64,
}

impl Estimate {
    fn from_sums(sum: f64, sum_sq: f64, count: u64) -> Self {
        if count == 0 {
            return Estimate {
                mean: f64::NAN,
                std_error: f64::NAN,
                count,
            };
        }
        let n = count as f64;
        let mean = sum / n;
        let std_error = if count > 1 {
            let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
            (var / n).sqrt()
        } else {
            f64::NAN
        };
        Estimate {
            mean,
            std_error,
            count,
        }
    }

    fn proportion(hits: u64, count: u64) -> Self {
        let h = hits as f64;
        Estimate::from_sums(h, h, count)
    }

    /// `|mean − target|` in units of the standard error.
    pub fn z_score(&self, target: f64) -> f64 {
        (self.mean - target).abs() / self.std_error
    }

    /// Whether `target` lies within `k` standard errors of the mean. A zero standard error
    /// requires an exact match up to rounding.
    pub fn within(&self, target: f64, k: f64) -> bool {
        let tol = k * self.std_error;
        (self.mean - target).abs() <= tol.max(1e-12 * (1.0 + target.abs()))
    }
}

/// Empirical outcome of `n` independent plays.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulationResult {
    pub replications: u64,
    pub seed: u64,
    pub voter: Estimate,
    pub politician: Estimate,
    pub bureaucrat: Estimate,
    pub prob_x: Estimate,
    pub posterior_x: Estimate,
    pub posterior_y: Estimate,
    pub reelection_good: Estimate,
    pub reelection_bad: Estimate,
    pub eta: Estimate,
    pub zeta: Estimate,
    /// True when standard errors are undefined because `n = 1`.
    pub degenerate_std_errors: bool,
}

#[derive(Debug, Clone, Copy, Default)]
struct Acc {
    voter: (f64, f64),
    politician: (f64, f64),
    bureaucrat: (f64, f64),
    n: u64,
    x: u64,
    good: u64,
    good_and_x: u64,
    good_and_y: u64,
    reelected_good: u64,
    reelected_bad: u64,
    good_in_office: u64,
}

impl Acc {
    fn merge(mut self, o: Acc) -> Acc {
        let add = |a: (f64, f64), b: (f64, f64)| (a.0 + b.0, a.1 + b.1);
        self.voter = add(self.voter, o.voter);
        self.politician = add(self.politician, o.politician);
        self.bureaucrat = add(self.bureaucrat, o.bureaucrat);
        self.n += o.n;
        self.x += o.x;
        self.good += o.good;
        self.good_and_x += o.good_and_x;
        self.good_and_y += o.good_and_y;
        self.reelected_good += o.reelected_good;
        self.reelected_bad += o.reelected_bad;
        self.good_in_office += o.good_in_office;
        self
    }
}

fn push(acc: &mut (f64, f64), v: f64) {
    acc.0 += v;
    acc.1 += v * v;
}

fn draw_type(rng: &mut ChaCha8Rng, p_good: f64) -> Type {
    if rng.random::<f64>() < p_good {
        Type::Good
    } else {
        Type::Bad
    }
}

fn draw_state(rng: &mut ChaCha8Rng, rho: f64) -> State {
    if rng.random::<f64>() < rho {
        Policy::X
    } else {
        Policy::Y
    }
}

fn resolve(rng: &mut ChaCha8Rng, lambda: f64, proposal: Policy, counter: Policy) -> Policy {
    let [(first, w), (second, _)] = lottery(lambda, proposal, counter);
    if w >= 1.0 || rng.random::<f64>() < w {
        first
    } else {
        second
    }
}

fn stream(seed: u64, rep: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rep);
    rng
}

/// Outcome of one play of the period-2 subgame.
struct Period2 {
    policy: Policy,
    state: State,
    politician_rent: f64,
    bureaucrat_rent: f64,
}

fn play_period2(rng: &mut ChaCha8Rng, params: &ModelParams, pol: Type, bur: Type) -> Period2 {
    let s = draw_state(rng, params.rho());
    let r_p = params.rent_p2().sample_from_unit(rng.random::<f64>());
    let r_b = params.rent_b2().sample_from_unit(rng.random::<f64>());
    let p = resolve(
        rng,
        params.lambda(),
        period2_action(pol, s),
        period2_action(bur, s),
    );
    let y = p == Policy::Y;
    Period2 {
        policy: p,
        state: s,
        politician_rent: if pol == Type::Bad && y { r_p } else { 0.0 },
        bureaucrat_rent: if bur == Type::Bad && y { r_b } else { 0.0 },
    }
}

fn play(rng: &mut ChaCha8Rng, profile: &StrategyProfile, params: &ModelParams, acc: &mut Acc) {
    let v = params.payoffs();
    let (d, e) = (params.delta(), params.office_rent());
    let s = draw_state(rng, params.rho());
    let pol = draw_type(rng, params.pi());
    let bur = draw_type(rng, params.beta());
    let r_p = params.rent_p1().sample_from_unit(rng.random::<f64>());
    let r_b = params.rent_b1().sample_from_unit(rng.random::<f64>());
    let q = profile.politician_rule(pol, s).act(r_p);
    let bq = profile.bureaucrat_rule(bur, s, q).act(r_b);
    let p = resolve(rng, params.lambda(), q, bq);
    let reelected = profile.voter.reelects(p);
    let pol2 = if reelected {
        pol
    } else {
        draw_type(rng, params.pi())
    };
    let two = play_period2(rng, params, pol2, bur);
    let flow1 = v.value(p, s);
    let flow2 = v.value(two.policy, two.state);
    let y1 = p == Policy::Y;

    let voter = flow1 + d * flow2;
    let politician = match pol {
        Type::Good => flow1 + e + d * (flow2 + if reelected { e } else { 0.0 }),
        Type::Bad => {
            let first = e + if y1 { r_p } else { 0.0 };
            first
                + if reelected {
                    d * (e + two.politician_rent)
                } else {
                    0.0
                }
        }
    };
    let bureaucrat = match bur {
        Type::Good => voter,
        Type::Bad => (if y1 { r_b } else { 0.0 }) + d * two.bureaucrat_rent,
    };
    push(&mut acc.voter, voter);
    push(&mut acc.politician, politician);
    push(&mut acc.bureaucrat, bureaucrat);
    acc.n += 1;
    let good = pol == Type::Good;
    acc.x += u64::from(!y1);
    acc.good += u64::from(good);
    acc.good_and_x += u64::from(good && !y1);
    acc.good_and_y += u64::from(good && y1);
    acc.reelected_good += u64::from(good && reelected);
    acc.reelected_bad += u64::from(!good && reelected);
    acc.good_in_office += u64::from(pol2 == Type::Good);
}

fn run_chunks<F>(n: u64, seed: u64, body: F) -> Acc
where
    F: Fn(&mut ChaCha8Rng, &mut Acc) + Sync,
{
    let chunks = n.div_ceil(CHUNK);
    let partial: Vec<Acc> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = Acc::default();
            for rep in c * CHUNK..((c + 1) * CHUNK).min(n) {
                let mut rng = stream(seed, rep);
                body(&mut rng, &mut acc);
            }
            acc
        })
        .collect();
    partial.into_iter().fold(Acc::default(), Acc::merge)
}

/// Play the full game `n` times under `profile`.
///
/// Deterministic for a fixed seed regardless of the number of threads. With `n = 1` the
/// standard errors are NaN and flagged.
pub fn simulate(
    profile: &StrategyProfile,
    params: &ModelParams,
    n: u64,
    seed: u64,
) -> Result<SimulationResult> {
    if n == 0 {
        return Err(ModelError::Precondition(
            "at least one replication is required".into(),
        ));
    }
    let acc = run_chunks(n, seed, |rng, acc| play(rng, profile, params, acc));
    let sum = |a: (f64, f64)| Estimate::from_sums(a.0, a.1, acc.n);
    Ok(SimulationResult {
        replications: n,
        seed,
        voter: sum(acc.voter),
        politician: sum(acc.politician),
        bureaucrat: sum(acc.bureaucrat),
        prob_x: Estimate::proportion(acc.x, acc.n),
        posterior_x: Estimate::proportion(acc.good_and_x, acc.x),
        posterior_y: Estimate::proportion(acc.good_and_y, acc.n - acc.x),
        reelection_good: Estimate::proportion(acc.reelected_good, acc.good),
        reelection_bad: Estimate::proportion(acc.reelected_bad, acc.n - acc.good),
        eta: Estimate::proportion(acc.reelected_bad, acc.n),
        zeta: Estimate::proportion(acc.good_in_office, acc.n),
        degenerate_std_errors: n == 1,
    })
}

/// Empirical period-2 payoffs for a fixed bureaucrat and politician (`None` draws a
/// challenger).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Period2Result {
    /// Voter (and good-type) policy payoff.
    pub voter: Estimate,
    /// Rent collected by the politician if bad.
    pub politician_rent: Estimate,
    /// Rent collected by the bureaucrat if bad.
    pub bureaucrat_rent: Estimate,
}

/// Play the period-2 subgame `n` times.
pub fn simulate_period2(
    params: &ModelParams,
    politician: Option<Type>,
    bureaucrat: Type,
    n: u64,
    seed: u64,
) -> Result<Period2Result> {
    if n == 0 {
        return Err(ModelError::Precondition(
            "at least one replication is required".into(),
        ));
    }
    let acc = run_chunks(n, seed, |rng, acc| {
        let pol = politician.unwrap_or_else(|| draw_type(rng, params.pi()));
        let two = play_period2(rng, params, pol, bureaucrat);
        push(
            &mut acc.voter,
            params.payoffs().value(two.policy, two.state),
        );
        push(&mut acc.politician, two.politician_rent);
        push(&mut acc.bureaucrat, two.bureaucrat_rent);
        acc.n += 1;
    });
    let sum = |a: (f64, f64)| Estimate::from_sums(a.0, a.1, acc.n);
    Ok(Period2Result {
        voter: sum(acc.voter),
        politician_rent: sum(acc.politician),
        bureaucrat_rent: sum(acc.bureaucrat),
    })
}
