//! Writing tables to files or stdout, plus the JSON sidecar describing how they were made.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::{json, Value};

use crate::table::{Format, Table};

/// Version of the CSV column layouts. Bump whenever a column is added, removed or renamed.
pub const CSV_SCHEMA_VERSION: u32 = 1;

/// Artifact version recorded in every sidecar.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Sidecar document: the resolved configuration, the artifact version and the files written.
pub fn sidecar(command: &str, config: Value, files: &[PathBuf]) -> Value {
    json!({
        "artifact": "pbe",
        "version": VERSION,
        "csv_schema": CSV_SCHEMA_VERSION,
        "command": command,
        "config": config,
        "files": files
            .iter()
            .map(|f| f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default())
            .collect::<Vec<_>>(),
    })
}

/// Write `tables` as `<dir>/<table name>.<ext>` and the sidecar as `<dir>/<stem>.meta.json`.
/// Returns every path written.
pub fn write_dir(
    dir: &Path,
    stem: &str,
    tables: &[Table],
    format: Format,
    config: Value,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    let mut written = Vec::new();
    for t in tables {
        let path = dir.join(format!("{}.{}", t.name, format.extension()));
        let file =
            fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        let mut w = io::BufWriter::new(file);
        t.write(format, &mut w)
            .with_context(|| format!("writing {}", path.display()))?;
        w.flush()
            .with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    let meta_path = dir.join(format!("{stem}.meta.json"));
    let meta = sidecar(stem, config, &written);
    let text = serde_json::to_string_pretty(&meta)? + "\n";
    fs::write(&meta_path, text).with_context(|| format!("writing {}", meta_path.display()))?;
    written.push(meta_path);
    Ok(written)
}

/// Write `tables` to `out`. In CSV, several tables are separated by a blank line and a
/// `# <name>` line; in JSON they form one object keyed by table name.
pub fn write_stream<W: Write>(mut out: W, tables: &[Table], format: Format) -> Result<()> {
    match (format, tables) {
        (_, [single]) => single.write(format, &mut out)?,
        (Format::Csv, many) => {
            for (i, t) in many.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "# {}", t.name)?;
                t.write_csv(&mut out)?;
            }
        }
        (Format::Json, many) => {
            let obj: serde_json::Map<String, Value> =
                many.iter().map(|t| (t.name.clone(), t.to_json())).collect();
            serde_json::to_writer_pretty(&mut out, &Value::Object(obj))?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Pretty JSON of any serializable value to `out`.
pub fn write_json<W: Write, T: serde::Serialize>(mut out: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}
