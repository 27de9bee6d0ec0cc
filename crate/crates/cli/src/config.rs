//! Parameter loading (`--config` file plus `--set` overrides) and sweep dimensions.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{Context, Result};
use pbe_core::{ModelError, RawParams};

/// A malformed command line that clap itself cannot detect. Maps to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Read the base parameters from an optional flat TOML file and apply `key=value`
/// overrides in order. Keys absent from both keep their defaults.
pub fn load_params(config: Option<&Path>, overrides: &[String]) -> Result<RawParams> {
    let mut raw = match config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config file {}", path.display()))?;
            RawParams::from_toml_str(&text)
                .with_context(|| format!("parsing config file {}", path.display()))?
        }
        None => RawParams::default(),
    };
    for assignment in overrides {
        raw.apply_override(assignment)
            .with_context(|| format!("applying override `{assignment}`"))?;
    }
    Ok(raw)
}

/// One swept parameter: `steps` evenly spaced values from `min` to `max` inclusive.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Dimension {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Dimension {
    /// The grid values; the last one is exactly `max`.
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.max
                } else {
                    self.min + (self.max - self.min) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

impl FromStr for Dimension {
    type Err = anyhow::Error;

    /// Parse `name:min:max:steps`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [name, min, max, steps] = parts[..] else {
            return Err(UsageError(format!(
                "dimension `{s}` is not of the form name:min:max:steps"
            ))
            .into());
        };
        if !RawParams::KEYS.contains(&name) {
            return Err(ModelError::UnknownKey(name.to_string()).into());
        }
        let number = |v: &str| -> Result<f64> {
            v.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| {
                    UsageError(format!("dimension `{s}`: `{v}` is not a finite number")).into()
                })
        };
        let steps: usize = steps
            .parse()
            .map_err(|_| UsageError(format!("dimension `{s}`: `{steps}` is not a step count")))?;
        if steps < 2 {
            return Err(UsageError(format!("dimension `{s}` needs at least 2 steps")).into());
        }
        Ok(Dimension {
            name: name.to_string(),
            min: number(min)?,
            max: number(max)?,
            steps,
        })
    }
}

/// Cartesian product of the dimensions over `base`, in row-major order (the first
/// dimension varies slowest). No dimensions yields the base point alone.
pub fn grid(base: &RawParams, dims: &[Dimension]) -> Result<Vec<RawParams>> {
    let mut seen = Vec::new();
    for d in dims {
        if seen.contains(&d.name.as_str()) {
            return Err(UsageError(format!("dimension `{}` is swept twice", d.name)).into());
        }
        seen.push(d.name.as_str());
    }
    let mut points = vec![*base];
    for d in dims {
        let values = d.values();
        let mut next = Vec::with_capacity(points.len() * values.len());
        for p in &points {
            for &v in &values {
                let mut q = *p;
                q.set(&d.name, v)?;
                next.push(q);
            }
        }
        points = next;
    }
    Ok(points)
}
