//! Figure presets: per-λ curves of welfare or selection under documented parameter defaults.
//!
//! Every preset evaluates the interior grid `λᵢ = i/(N+1)`, `i = 1..N`. Wherever the set of
//! certified classes changes between two neighbouring grid points, the change point is
//! located by bisection to within [`BOUNDARY_TOLERANCE`] and both sides of it are emitted as
//! extra `boundary` rows, so discontinuities show up sharply in the data.
//!
//! Parameters are layered: the `--config` file (if any), then the preset's defaults, then the
//! panel's values, then `--set` overrides. A preset with several panels (fig4 plots two values
//! of β) emits one table per panel; overriding a key that distinguishes the panels collapses
//! them into a single table named after the preset.

use anyhow::Result;
use pbe_core::welfare::{selection, welfare};
use pbe_core::{certify, EquilibriumClass, ModelParams, RawParams};

use crate::eval::{certified_classes, NO_CLASS};
use crate::table::{Cell, Table};

/// Grid points per preset unless overridden.
pub const DEFAULT_STEPS: usize = 99;

/// Width in `λ` of the bracket around each class change.
pub const BOUNDARY_TOLERANCE: f64 = 1e-10;

/// Region tag when more than one class is certified.
pub const COEXIST: &str = "coexist";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// Welfare in a PECB when the voter is indifferent between the two benchmarks.
    Fig1,
    /// Welfare in a PECB with a well-aligned bureaucracy (monotone in λ).
    Fig2,
    /// Welfare in PECB and PEPB with a large state-x mismatch cost.
    Fig3,
    /// Welfare across the switch from PECB to NPE-SF under low office rents.
    Fig4,
    /// Selection measures η and ζ in a PECB.
    Fig5,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::Fig1,
        Preset::Fig2,
        Preset::Fig3,
        Preset::Fig4,
        Preset::Fig5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
        }
    }

    /// Parameter values the preset fixes; everything else keeps its configured value.
    ///
    /// All presets use `δ = 1`, unit matching payoffs and `U[0, 2]` rents unless overridden.
    pub fn defaults(self) -> &'static [(&'static str, f64)] {
        const UNIT: [(&str, f64); 8] = [
            ("delta", 1.0),
            ("v_xy", 0.0),
            ("v_yx", 0.0),
            ("v_yy", 1.0),
            ("rent_p1_upper", 2.0),
            ("rent_p2_upper", 2.0),
            ("rent_b1_upper", 2.0),
            ("rent_b2_upper", 2.0),
        ];
        const FIG1: [(&str, f64); 13] = concat_defaults(
            UNIT,
            [
                ("E", 1.0),
                ("v_xx", 1.0),
                ("beta", 0.25),
                ("pi", 0.5),
                ("rho", 0.5),
            ],
        );
        const FIG2: [(&str, f64); 13] = concat_defaults(
            UNIT,
            [
                ("E", 1.0),
                ("v_xx", 1.0),
                ("beta", 0.75),
                ("pi", 0.5),
                ("rho", 0.5),
            ],
        );
        const FIG3: [(&str, f64); 13] = concat_defaults(
            UNIT,
            [
                ("E", 1.0),
                ("v_xx", 500.0),
                ("beta", 0.5),
                ("pi", 0.5),
                ("rho", 0.5),
            ],
        );
        const FIG4: [(&str, f64); 13] = concat_defaults(
            UNIT,
            [
                ("E", 0.85),
                ("v_xx", 1.0),
                ("beta", 0.9),
                ("pi", 0.7),
                ("rho", 0.85),
            ],
        );
        const FIG5: [(&str, f64); 13] = concat_defaults(
            UNIT,
            [
                ("E", 1.0),
                ("v_xx", 1.0),
                ("beta", 0.5),
                ("pi", 0.5),
                ("rho", 0.5),
            ],
        );
        match self {
            Preset::Fig1 => &FIG1,
            Preset::Fig2 => &FIG2,
            Preset::Fig3 => &FIG3,
            Preset::Fig4 => &FIG4,
            Preset::Fig5 => &FIG5,
        }
    }

    /// Panels as `(table name suffix, key, value)`; presets with one panel return an empty
    /// slice.
    pub fn panels(self) -> &'static [(&'static str, &'static str, f64)] {
        match self {
            Preset::Fig4 => &[("beta_0.9", "beta", 0.9), ("beta_0.75", "beta", 0.75)],
            _ => &[],
        }
    }

    pub fn is_selection(self) -> bool {
        self == Preset::Fig5
    }

    /// Table columns.
    pub fn columns(self) -> Vec<String> {
        let cols: &[&str] = if self.is_selection() {
            &["lambda", "class", "point", "eta", "zeta", "e_zeta"]
        } else {
            &[
                "lambda", "class", "region", "point", "eu_total", "eu_good", "eu_bad",
            ]
        };
        cols.iter().map(|s| s.to_string()).collect()
    }

    /// `base` with the preset's defaults applied.
    pub fn apply(self, base: &RawParams) -> RawParams {
        let mut raw = *base;
        for (k, v) in self.defaults() {
            raw.set(k, *v).expect("preset keys are schema keys");
        }
        raw
    }

    /// Classes that tag rows at `p`.
    fn classes(self, p: &ModelParams) -> Vec<EquilibriumClass> {
        if self.is_selection() {
            let pecb = certify(EquilibriumClass::Pecb, p)
                .map(|c| c.verdict)
                .unwrap_or(false);
            if pecb {
                vec![EquilibriumClass::Pecb]
            } else {
                vec![]
            }
        } else {
            certified_classes(p)
        }
    }
}

const fn concat_defaults<const N: usize>(
    unit: [(&'static str, f64); 8],
    extra: [(&'static str, f64); N],
) -> [(&'static str, f64); 13] {
    let mut out = [("", 0.0); 13];
    let mut i = 0;
    while i < 8 {
        out[i] = unit[i];
        i += 1;
    }
    let mut j = 0;
    while j < N {
        out[8 + j] = extra[j];
        j += 1;
    }
    out
}

/// `λᵢ = i/(steps+1)` for `i = 1..=steps`.
pub fn lambda_grid(steps: usize) -> Vec<f64> {
    (1..=steps).map(|i| i as f64 / (steps + 1) as f64).collect()
}

#[derive(Debug, Clone)]
struct Sample {
    lambda: f64,
    boundary: bool,
    classes: Vec<EquilibriumClass>,
}

fn sample(preset: Preset, base: &ModelParams, lambda: f64, boundary: bool) -> Result<Sample> {
    let p = base.with_lambda(lambda)?;
    Ok(Sample {
        lambda,
        boundary,
        classes: preset.classes(&p),
    })
}

/// Bracket the change between two grid samples with different class sets.
fn refine(
    preset: Preset,
    base: &ModelParams,
    left: &Sample,
    right: &Sample,
) -> Result<[Sample; 2]> {
    let (mut lo, mut hi) = (left.lambda, right.lambda);
    while hi - lo > BOUNDARY_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if preset.classes(&base.with_lambda(mid)?) == left.classes {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok([
        sample(preset, base, lo, true)?,
        sample(preset, base, hi, true)?,
    ])
}

fn region(classes: &[EquilibriumClass]) -> String {
    match classes {
        [] => NO_CLASS.to_string(),
        [one] => one.label().to_string(),
        _ => COEXIST.to_string(),
    }
}

fn rows_for(preset: Preset, base: &ModelParams, s: &Sample) -> Result<Vec<Vec<Cell>>> {
    let p = base.with_lambda(s.lambda)?;
    let point: Cell = if s.boundary { "boundary" } else { "grid" }.into();
    if preset.is_selection() {
        let sel = selection(&p)?;
        let tag = s.classes.first().map_or(NO_CLASS, |c| c.label());
        return Ok(vec![vec![
            s.lambda.into(),
            tag.into(),
            point,
            sel.eta.into(),
            sel.zeta.into(),
            sel.e_zeta.into(),
        ]]);
    }
    let region: Cell = region(&s.classes).into();
    if s.classes.is_empty() {
        return Ok(vec![vec![
            s.lambda.into(),
            NO_CLASS.into(),
            region,
            point,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
        ]]);
    }
    s.classes
        .iter()
        .map(|&c| {
            let w = welfare(c, &p)?;
            Ok(vec![
                s.lambda.into(),
                c.label().into(),
                region.clone(),
                point.clone(),
                w.eu_total.into(),
                w.eu_given_good.into(),
                w.eu_given_bad.into(),
            ])
        })
        .collect()
}

/// The preset's tables: `base` is the configured bundle (before preset defaults), `overrides`
/// the `--set` assignments applied last.
pub fn figure_tables(
    preset: Preset,
    base: &RawParams,
    overrides: &[String],
    steps: usize,
) -> Result<Vec<Table>> {
    let with_defaults = preset.apply(base);
    let overridden: Vec<String> = overrides
        .iter()
        .filter_map(|o| o.split_once('=').map(|(k, _)| k.trim().to_string()))
        .collect();
    let panels: Vec<_> = preset
        .panels()
        .iter()
        .filter(|(_, key, _)| !overridden.iter().any(|k| k == key))
        .collect();
    let finish = |mut raw: RawParams, name: String| -> Result<Table> {
        for o in overrides {
            raw.apply_override(o)?;
        }
        let mut t = figure_table(preset, &raw, steps)?;
        t.name = name;
        Ok(t)
    };
    if panels.is_empty() {
        return Ok(vec![finish(with_defaults, preset.name().to_string())?]);
    }
    panels
        .into_iter()
        .map(|(suffix, key, value)| {
            let mut raw = with_defaults;
            raw.set(key, *value)?;
            finish(raw, format!("{}_{suffix}", preset.name()))
        })
        .collect()
}

/// One curve table over `steps` interior grid points at exactly `raw` (no preset defaults
/// applied).
pub fn figure_table(preset: Preset, raw: &RawParams, steps: usize) -> Result<Table> {
    if steps < 2 {
        return Err(
            crate::config::UsageError("a figure needs at least 2 grid steps".into()).into(),
        );
    }
    let base = raw.validate()?;
    let grid = lambda_grid(steps);
    let coarse: Vec<Sample> = {
        use rayon::prelude::*;
        grid.par_iter()
            .map(|&l| sample(preset, &base, l, false))
            .collect::<Result<_>>()?
    };
    let mut samples = Vec::with_capacity(coarse.len() + 4);
    for (i, s) in coarse.iter().enumerate() {
        samples.push(s.clone());
        if let Some(next) = coarse.get(i + 1) {
            if next.classes != s.classes {
                samples.extend(refine(preset, &base, s, next)?);
            }
        }
    }
    let mut table = Table::new(preset.name(), preset.columns());
    for s in &samples {
        for row in rows_for(preset, &base, s)? {
            table.push(row);
        }
    }
    Ok(table)
}
