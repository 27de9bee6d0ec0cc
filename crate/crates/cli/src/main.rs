//! `pbe`: certify, verify and tabulate the pure-strategy equilibria of the
//! politician–bureaucrat–voter agency game.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation error, 3 I/O error.

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use pbe_cli::config::{load_params, Dimension, UsageError};
use pbe_cli::eval::{certified_classes, rows_at, EvalOptions, OutputKind};
use pbe_cli::figures::{figure_tables, Preset, DEFAULT_STEPS};
use pbe_cli::output::{write_dir, write_json, write_stream};
use pbe_cli::sweep::{run_sweep, SweepConfig};
use pbe_cli::table::{Format, Table};
use pbe_core::simulator::{best_response_audit, simulate};
use pbe_core::welfare::{benchmark, selection, welfare};
use pbe_core::{
    build_profile, build_profile_unchecked, certify, exact_expected_utilities, thresholds,
    EquilibriumClass, ModelError, ModelParams, RawParams,
};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "pbe", version, about, long_about = None)]
struct Cli {
    /// Flat TOML file with parameter values; absent keys keep their defaults.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Override one parameter (repeatable, applied in order after --config).
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Write result files and a `.meta.json` sidecar into this directory instead of stdout.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Base seed for Monte Carlo cross-checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Monte Carlo replications for audit cross-checks (0 disables them).
    #[arg(long, global = true, default_value_t = 0)]
    reps: u64,
    /// Output format [default: csv for sweep and figure, json otherwise].
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a parameter bundle and print it with its derived thresholds.
    Validate,
    /// Evaluate the existence conditions of one or every equilibrium class.
    Certify {
        #[arg(long)]
        class: Option<EquilibriumClass>,
    },
    /// Evaluate requested outputs over a grid of parameter values.
    Sweep {
        /// Swept dimension `name:min:max:steps` (repeatable; the first varies slowest).
        #[arg(long = "dim", value_name = "NAME:MIN:MAX:STEPS")]
        dims: Vec<String>,
        /// Tables to produce.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "welfare")]
        outputs: Vec<OutputKind>,
        /// Rent quantile points per rent-bearing decision in audits.
        #[arg(long, default_value_t = 101)]
        rent_grid: usize,
    },
    /// Voter welfare in every certified class (or the benchmark at λ ∈ {0, 1}).
    Welfare {
        #[arg(long)]
        class: Option<EquilibriumClass>,
    },
    /// Welfare with a toothless and a dictatorial bureaucracy and the thresholds comparing them.
    Benchmark,
    /// Political selection measures η, ζ and E_ζ under PECB play.
    Selection,
    /// Best-response audit of a class's strategy profile, optionally cross-checked by Monte Carlo.
    Audit {
        #[arg(long)]
        class: Option<EquilibriumClass>,
        /// Rent quantile points per rent-bearing decision.
        #[arg(long, default_value_t = 101)]
        rent_grid: usize,
        /// Audit the class's profile even where the class is not certified.
        #[arg(long, requires = "class")]
        unchecked: bool,
    },
    /// Emit the per-λ curves of a figure preset.
    Figure {
        #[arg(value_enum)]
        preset: Preset,
        /// Interior λ grid points `i/(steps+1)`.
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Certify { .. } => "certify",
            Command::Sweep { .. } => "sweep",
            Command::Welfare { .. } => "welfare",
            Command::Benchmark => "benchmark",
            Command::Selection => "selection",
            Command::Audit { .. } => "audit",
            Command::Figure { .. } => "figure",
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Command::Sweep { .. } | Command::Figure { .. } => Format::Csv,
            _ => Format::Json,
        }
    }
}

/// What a command produced: tables for CSV, and optionally a richer JSON document.
struct Output {
    tables: Vec<Table>,
    json: Option<Value>,
}

impl Output {
    fn tables(tables: Vec<Table>) -> Self {
        Output { tables, json: None }
    }
}

fn single_point(
    kind: OutputKind,
    raw: &RawParams,
    p: &ModelParams,
    classes: &[EquilibriumClass],
    opts: &EvalOptions,
) -> Result<Table> {
    let mut t = kind.empty_table();
    for row in rows_at(kind, raw, p, classes, opts, 0)? {
        t.push(row);
    }
    Ok(t)
}

fn uncertified(class: EquilibriumClass, p: &ModelParams) -> Result<()> {
    let cert = certify(class, p)?;
    if cert.verdict {
        Ok(())
    } else {
        Err(ModelError::Uncertified {
            class: class.to_string(),
            failing: cert.failing_names(),
        }
        .into())
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let opts = |rent_grid| EvalOptions {
        seed: cli.seed,
        reps: cli.reps,
        rent_grid,
    };
    if let Command::Figure { preset, steps } = &cli.command {
        let base = load_params(cli.config.as_deref(), &[])?;
        return Ok(Output::tables(figure_tables(
            *preset, &base, &cli.set, *steps,
        )?));
    }
    let raw = load_params(cli.config.as_deref(), &cli.set)?;
    if let Command::Sweep {
        dims,
        outputs,
        rent_grid,
    } = &cli.command
    {
        let dims = dims
            .iter()
            .map(|d| d.parse::<Dimension>())
            .collect::<Result<Vec<_>>>()?;
        let cfg = SweepConfig {
            base: raw,
            dims,
            outputs: outputs.clone(),
            options: opts(*rent_grid),
        };
        return Ok(Output::tables(run_sweep(&cfg)?));
    }
    let p = raw.validate()?;
    let defaults = EvalOptions::default();
    match &cli.command {
        Command::Validate => {
            let mut t = Table::new(
                "params",
                RawParams::KEYS.iter().map(|s| s.to_string()).collect(),
            );
            t.push(
                RawParams::KEYS
                    .iter()
                    .map(|k| raw.get(k).map(Into::into))
                    .collect::<Result<_, _>>()?,
            );
            let per_class: serde_json::Map<String, Value> = EquilibriumClass::ALL
                .into_iter()
                .map(|c| {
                    let v = thresholds(c, &p).map_or(Value::Null, |t| json!(t));
                    (c.label().to_string(), v)
                })
                .collect();
            let json = json!({ "valid": true, "params": raw, "thresholds": per_class });
            Ok(Output {
                tables: vec![t],
                json: Some(json),
            })
        }
        Command::Certify { class } => {
            let classes: Vec<_> = class.map_or(EquilibriumClass::ALL.to_vec(), |c| vec![c]);
            let mut t = single_point(OutputKind::Certificates, &raw, &p, &[], &defaults)?;
            if let Some(c) = class {
                certify(*c, &p)?;
                t.rows
                    .retain(|r| r[RawParams::KEYS.len()].as_str() == Some(c.label()));
            }
            let docs: Vec<Value> = classes
                .iter()
                .map(|&c| match certify(c, &p) {
                    Ok(cert) => serde_json::to_value(cert).expect("certificate serializes"),
                    Err(e) => {
                        json!({ "class": c.label(), "verdict": false, "error": e.to_string() })
                    }
                })
                .collect();
            Ok(Output {
                tables: vec![t],
                json: Some(Value::Array(docs)),
            })
        }
        Command::Welfare { class } => {
            let classes = match class {
                Some(c) => {
                    if !(p.lambda() == 0.0 || p.lambda() == 1.0) {
                        uncertified(*c, &p)?;
                    }
                    vec![*c]
                }
                None => certified_classes(&p),
            };
            let t = single_point(OutputKind::Welfare, &raw, &p, &classes, &defaults)?;
            let mut json = t.to_json();
            if let Some(rows) = json.as_array_mut() {
                for (row, c) in rows.iter_mut().zip(
                    classes
                        .iter()
                        .copied()
                        .chain(std::iter::repeat(EquilibriumClass::Pecb)),
                ) {
                    let report = welfare(c, &p)?;
                    row["report"] = serde_json::to_value(report)?;
                }
            }
            Ok(Output {
                tables: vec![t],
                json: Some(json),
            })
        }
        Command::Benchmark => {
            let t = single_point(OutputKind::Benchmarks, &raw, &p, &[], &defaults)?;
            Ok(Output {
                tables: vec![t],
                json: Some(serde_json::to_value(benchmark(&p)?)?),
            })
        }
        Command::Selection => {
            let t = single_point(OutputKind::Selection, &raw, &p, &[], &defaults)?;
            let pecb = certify(EquilibriumClass::Pecb, &p)
                .map(|c| c.verdict)
                .unwrap_or(false);
            let report = selection(&p)?;
            Ok(Output {
                tables: vec![t],
                json: Some(json!({ "pecb_certified": pecb, "selection": report })),
            })
        }
        Command::Audit {
            class,
            rent_grid,
            unchecked,
        } => {
            let classes = match class {
                Some(c) => {
                    if !unchecked {
                        uncertified(*c, &p)?;
                    }
                    vec![*c]
                }
                None => certified_classes(&p),
            };
            let o = opts(*rent_grid);
            let t = single_point(OutputKind::Audit, &raw, &p, &classes, &o)?;
            let docs = classes
                .iter()
                .map(|&c| {
                    let profile = if *unchecked {
                        build_profile_unchecked(c, &p)?
                    } else {
                        build_profile(c, &p)?
                    };
                    let report = best_response_audit(&profile, &p, *rent_grid);
                    let mut doc = json!({ "class": c.label(), "audit": report });
                    if cli.reps > 0 {
                        doc["exact"] =
                            serde_json::to_value(exact_expected_utilities(&profile, &p))?;
                        doc["simulation"] =
                            serde_json::to_value(simulate(&profile, &p, cli.reps, cli.seed)?)?;
                    }
                    Ok(doc)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Output {
                tables: vec![t],
                json: Some(Value::Array(docs)),
            })
        }
        Command::Sweep { .. } | Command::Figure { .. } => unreachable!("handled above"),
    }
}

/// The resolved configuration recorded in the sidecar.
fn resolved_config(cli: &Cli) -> Value {
    let mut doc = json!({
        "config_file": cli.config,
        "overrides": cli.set,
        "seed": cli.seed,
        "reps": cli.reps,
    });
    match &cli.command {
        Command::Figure { preset, steps } => {
            doc["preset"] = json!(preset);
            doc["steps"] = json!(steps);
            if let Ok(base) = load_params(cli.config.as_deref(), &[]) {
                doc["params"] = json!(preset.apply(&base));
                doc["panels"] = json!(preset.panels());
            }
        }
        cmd => {
            if let Ok(raw) = load_params(cli.config.as_deref(), &cli.set) {
                doc["params"] = json!(raw);
            }
            if let Command::Sweep {
                dims,
                outputs,
                rent_grid,
            } = cmd
            {
                doc["dims"] = json!(dims
                    .iter()
                    .filter_map(|d| d.parse::<Dimension>().ok())
                    .collect::<Vec<_>>());
                doc["outputs"] = json!(outputs);
                doc["rent_grid"] = json!(rent_grid);
            }
            if let Command::Audit {
                class,
                rent_grid,
                unchecked,
            } = cmd
            {
                doc["class"] = json!(class.map(|c| c.label()));
                doc["rent_grid"] = json!(rent_grid);
                doc["unchecked"] = json!(unchecked);
            }
        }
    }
    doc
}

fn emit(cli: &Cli, output: Output) -> Result<()> {
    let format = cli.format.unwrap_or_else(|| cli.command.default_format());
    let name = cli.command.name();
    match (&cli.out, format, output.json) {
        (Some(dir), Format::Json, Some(doc)) => {
            std::fs::create_dir_all(dir)
                .with_context(|| format!("creating output directory {}", dir.display()))?;
            let path = dir.join(format!("{name}.json"));
            let file = std::fs::File::create(&path)
                .with_context(|| format!("creating {}", path.display()))?;
            write_json(io::BufWriter::new(file), &doc)
                .with_context(|| format!("writing {}", path.display()))?;
            let meta = pbe_cli::output::sidecar(name, resolved_config(cli), &[path]);
            let meta_path = dir.join(format!("{name}.meta.json"));
            std::fs::write(&meta_path, serde_json::to_string_pretty(&meta)? + "\n")
                .with_context(|| format!("writing {}", meta_path.display()))?;
        }
        (Some(dir), _, _) => {
            write_dir(dir, name, &output.tables, format, resolved_config(cli))?;
        }
        (None, Format::Json, Some(doc)) => write_json(io::stdout().lock(), &doc)?,
        (None, _, _) => write_stream(io::stdout().lock(), &output.tables, format)?,
    }
    Ok(())
}

/// Exit code for an error: I/O 3, model validation 2, anything else (usage) 1.
fn exit_code(err: &anyhow::Error) -> u8 {
    if err
        .chain()
        .any(|c| c.downcast_ref::<UsageError>().is_some())
    {
        return 1;
    }
    let io = err.chain().any(|c| {
        c.downcast_ref::<io::Error>().is_some()
            || c.downcast_ref::<csv::Error>()
                .is_some_and(|e| e.is_io_error())
    });
    if io {
        return 3;
    }
    if err
        .chain()
        .any(|c| c.downcast_ref::<ModelError>().is_some())
    {
        return 2;
    }
    1
}

/// A closed stdout (e.g. piping into `head`) ends the run quietly.
fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|c| {
        let io = c.downcast_ref::<io::Error>().or_else(|| {
            c.downcast_ref::<csv::Error>().and_then(|e| match e.kind() {
                csv::ErrorKind::Io(io) => Some(io),
                _ => None,
            })
        });
        io.is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli).and_then(|out| emit(&cli, out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if is_broken_pipe(&e) {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
