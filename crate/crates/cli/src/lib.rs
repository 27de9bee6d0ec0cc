//! Library side of the `pbe` command-line tool: configuration, sweeps, figure presets and
//! result emission. The binary in `main.rs` is a thin clap front end over these modules.

pub mod config;
pub mod eval;
pub mod figures;
pub mod output;
pub mod sweep;
pub mod table;

pub use config::{load_params, Dimension, UsageError};
pub use eval::{EvalOptions, OutputKind};
pub use figures::{figure_table, figure_tables, Preset};
pub use sweep::{run_sweep, SweepConfig};
pub use table::{Cell, Format, Table};
