//! Parameter sweeps: a grid over named parameters, evaluated in parallel, emitted in grid
//! order.

use anyhow::{Context, Result};
use pbe_core::{ModelParams, RawParams};
use rayon::prelude::*;

use crate::config::{grid, Dimension};
use crate::eval::{certified_classes, rows_at, EvalOptions, OutputKind};
use crate::table::Table;

/// Everything a sweep needs.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SweepConfig {
    pub base: RawParams,
    pub dims: Vec<Dimension>,
    pub outputs: Vec<OutputKind>,
    pub options: EvalOptions,
}

/// Validate every grid point up front so a bad range fails before any work is done.
fn validated_grid(cfg: &SweepConfig) -> Result<Vec<(RawParams, ModelParams)>> {
    grid(&cfg.base, &cfg.dims)?
        .into_iter()
        .enumerate()
        .map(|(i, raw)| {
            let p = raw
                .validate()
                .with_context(|| format!("grid point {i} is not a valid parameter bundle"))?;
            Ok((raw, p))
        })
        .collect()
}

/// Evaluate the sweep: one table per requested output, rows ordered by grid index.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<Table>> {
    let points = validated_grid(cfg)?;
    let mut outputs = cfg.outputs.clone();
    outputs.dedup();
    let per_point: Vec<Vec<Vec<Vec<crate::table::Cell>>>> = points
        .par_iter()
        .enumerate()
        .map(|(i, (raw, p))| {
            let classes = certified_classes(p);
            outputs
                .iter()
                .map(|&kind| rows_at(kind, raw, p, &classes, &cfg.options, i as u64))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut tables: Vec<Table> = outputs.iter().map(|k| k.empty_table()).collect();
    for point in per_point {
        for (table, rows) in tables.iter_mut().zip(point) {
            for row in rows {
                table.push(row);
            }
        }
    }
    Ok(tables)
}
