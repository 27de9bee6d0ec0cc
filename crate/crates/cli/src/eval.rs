//! Per-point evaluation of every requested output, as table rows.

use anyhow::Result;
use pbe_core::simulator::{best_response_audit, simulate};
use pbe_core::welfare::{benchmark, selection, welfare};
use pbe_core::{
    build_profile_unchecked, certify, exact_expected_utilities, EquilibriumClass, ModelParams,
    RawParams,
};

use crate::table::{Cell, Table};

/// The outputs a sweep can request; each becomes one table with one or more rows per point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Certificates,
    Welfare,
    Selection,
    Benchmarks,
    Audit,
}

impl OutputKind {
    pub fn name(self) -> &'static str {
        match self {
            OutputKind::Certificates => "certificates",
            OutputKind::Welfare => "welfare",
            OutputKind::Selection => "selection",
            OutputKind::Benchmarks => "benchmarks",
            OutputKind::Audit => "audit",
        }
    }

    /// Columns after the parameter columns.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            OutputKind::Certificates => &["class", "verdict", "failing", "note"],
            OutputKind::Welfare => &["class", "eu_total", "eu_good", "eu_bad", "eta", "zeta"],
            OutputKind::Selection => &["class", "eta", "zeta", "e_zeta"],
            OutputKind::Benchmarks => &[
                "gamma_toothless",
                "eu_toothless",
                "eu_dictatorial",
                "delta_eu",
                "beta_tilde",
                "rho_pi",
                "rho_gamma",
                "rho_tilde_beta",
            ],
            OutputKind::Audit => &[
                "class",
                "passes",
                "max_gain",
                "voter_indifferent",
                "failing_sets",
                "mc_voter",
                "mc_voter_se",
                "mc_voter_z",
            ],
        }
    }

    /// Full header: every schema parameter followed by [`columns`](Self::columns).
    pub fn header(self) -> Vec<String> {
        RawParams::KEYS
            .iter()
            .chain(self.columns())
            .map(|s| s.to_string())
            .collect()
    }

    pub fn empty_table(self) -> Table {
        Table::new(self.name(), self.header())
    }
}

/// Knobs shared by every evaluation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EvalOptions {
    /// Base seed; grid point `i` uses `seed + i`.
    pub seed: u64,
    /// Monte Carlo replications for the audit cross-check (0 disables it).
    pub reps: u64,
    /// Rent quantile points per rent-bearing decision in the audit.
    pub rent_grid: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            seed: 1,
            reps: 0,
            rent_grid: 101,
        }
    }
}

/// Tag for points where no class is certified.
pub const NO_CLASS: &str = "none";
/// Tag for welfare at `λ ∈ {0, 1}`, where the benchmark formulas apply.
pub const BENCHMARK_TAG: &str = "benchmark";

fn param_cells(raw: &RawParams) -> Vec<Cell> {
    RawParams::KEYS
        .iter()
        .map(|k| Cell::Num(raw.get(k).expect("schema key")))
        .collect()
}

fn is_endpoint(p: &ModelParams) -> bool {
    p.lambda() == 0.0 || p.lambda() == 1.0
}

/// Classes whose certificate verdict is true at `p`. Classes whose conditions are undefined
/// at `p` count as not certified.
pub fn certified_classes(p: &ModelParams) -> Vec<EquilibriumClass> {
    EquilibriumClass::ALL
        .into_iter()
        .filter(|&c| certify(c, p).map(|cert| cert.verdict).unwrap_or(false))
        .collect()
}

/// `η` and `ζ` under the class's strategy profile, from the exact evaluator; PECB play at the
/// toothless endpoint; undefined otherwise.
fn selection_for(class: EquilibriumClass, p: &ModelParams) -> (f64, f64) {
    if !is_endpoint(p) {
        if let Ok(profile) = build_profile_unchecked(class, p) {
            let exact = exact_expected_utilities(&profile, p);
            return (exact.eta, exact.zeta);
        }
    }
    match selection(p) {
        Ok(s) if class == EquilibriumClass::Pecb => (s.eta, s.zeta),
        _ => (f64::NAN, f64::NAN),
    }
}

/// Welfare rows (after the parameter columns) for the given classes at `p`.
pub fn welfare_rows(p: &ModelParams, classes: &[EquilibriumClass]) -> Result<Vec<Vec<Cell>>> {
    if is_endpoint(p) {
        let w = welfare(EquilibriumClass::Pecb, p)?;
        let (eta, zeta) = selection_for(EquilibriumClass::Pecb, p);
        return Ok(vec![vec![
            BENCHMARK_TAG.into(),
            w.eu_total.into(),
            w.eu_given_good.into(),
            w.eu_given_bad.into(),
            eta.into(),
            zeta.into(),
        ]]);
    }
    if classes.is_empty() {
        return Ok(vec![vec![
            NO_CLASS.into(),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
        ]]);
    }
    classes
        .iter()
        .map(|&c| {
            let w = welfare(c, p)?;
            let (eta, zeta) = selection_for(c, p);
            Ok(vec![
                c.label().into(),
                w.eu_total.into(),
                w.eu_given_good.into(),
                w.eu_given_bad.into(),
                eta.into(),
                zeta.into(),
            ])
        })
        .collect()
}

fn certificate_rows(p: &ModelParams) -> Vec<Vec<Cell>> {
    EquilibriumClass::ALL
        .into_iter()
        .map(|c| match certify(c, p) {
            Ok(cert) => vec![
                c.label().into(),
                cert.verdict.into(),
                cert.failing()
                    .map(|x| x.name)
                    .collect::<Vec<_>>()
                    .join(";")
                    .into(),
                Cell::Empty,
            ],
            Err(e) => vec![
                c.label().into(),
                false.into(),
                Cell::Empty,
                e.to_string().into(),
            ],
        })
        .collect()
}

fn selection_rows(p: &ModelParams) -> Vec<Vec<Cell>> {
    let certified = certify(EquilibriumClass::Pecb, p)
        .map(|c| c.verdict)
        .unwrap_or(false);
    let tag = if certified { "PECB" } else { NO_CLASS };
    match selection(p) {
        Ok(s) => vec![vec![
            tag.into(),
            s.eta.into(),
            s.zeta.into(),
            s.e_zeta.into(),
        ]],
        Err(_) => vec![vec![tag.into(), Cell::Empty, Cell::Empty, Cell::Empty]],
    }
}

fn benchmark_rows(p: &ModelParams) -> Result<Vec<Vec<Cell>>> {
    let b = benchmark(p)?;
    Ok(vec![vec![
        b.gamma_toothless.into(),
        b.eu_toothless.into(),
        b.eu_dictatorial.into(),
        b.delta_eu.into(),
        b.beta_tilde.into(),
        b.rho_pi.into(),
        b.rho_gamma.into(),
        b.rho_tilde_beta.into(),
    ]])
}

fn audit_rows(
    p: &ModelParams,
    classes: &[EquilibriumClass],
    opts: &EvalOptions,
    seed: u64,
) -> Result<Vec<Vec<Cell>>> {
    if classes.is_empty() {
        let mut row = vec![NO_CLASS.into()];
        row.extend(std::iter::repeat(Cell::Empty).take(7));
        return Ok(vec![row]);
    }
    classes
        .iter()
        .map(|&c| {
            let profile = build_profile_unchecked(c, p)?;
            let report = best_response_audit(&profile, p, opts.rent_grid);
            let mut row = vec![
                c.label().into(),
                report.passes.into(),
                report.max_gain.into(),
                report.voter_indifferent.into(),
                Cell::Int(report.failing_info_sets().len() as u64),
            ];
            if opts.reps > 0 {
                let sim = simulate(&profile, p, opts.reps, seed)?;
                let exact = exact_expected_utilities(&profile, p);
                row.extend([
                    sim.voter.mean.into(),
                    sim.voter.std_error.into(),
                    sim.voter.z_score(exact.voter_welfare).into(),
                ]);
            } else {
                row.extend([Cell::Empty, Cell::Empty, Cell::Empty]);
            }
            Ok(row)
        })
        .collect()
}

/// Full rows (parameters first) of `kind` at grid point `index`.
pub fn rows_at(
    kind: OutputKind,
    raw: &RawParams,
    p: &ModelParams,
    classes: &[EquilibriumClass],
    opts: &EvalOptions,
    index: u64,
) -> Result<Vec<Vec<Cell>>> {
    let body = match kind {
        OutputKind::Certificates => certificate_rows(p),
        OutputKind::Welfare => welfare_rows(p, classes)?,
        OutputKind::Selection => selection_rows(p),
        OutputKind::Benchmarks => benchmark_rows(p)?,
        OutputKind::Audit => audit_rows(p, classes, opts, opts.seed.wrapping_add(index))?,
    };
    let params = param_cells(raw);
    Ok(body
        .into_iter()
        .map(|tail| params.iter().cloned().chain(tail).collect())
        .collect())
}
