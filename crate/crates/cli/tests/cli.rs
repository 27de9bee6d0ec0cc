//! End-to-end behaviour of the `pbe` binary: exit codes, reproducible output, sidecars and
//! consistency of emitted class tags with the certifier.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pbe_cli::figures::{figure_tables, Preset};
use pbe_core::{certify, EquilibriumClass, RawParams};

fn pbe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    pbe(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    let out = pbe(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn records(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn exit_codes_follow_the_error_kind() {
    assert_eq!(code(&["validate"]), 0);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    // Usage errors.
    assert_eq!(code(&["no-such-command"]), 1);
    assert_eq!(code(&["figure", "fig9"]), 1);
    assert_eq!(code(&["sweep", "--dim", "lambda:0:1"]), 1);
    assert_eq!(code(&["sweep", "--dim", "lambda:0:1:1"]), 1);
    // Validation errors.
    assert_eq!(code(&["validate", "--set", "pi=1.5"]), 2);
    assert_eq!(code(&["validate", "--set", "v_xx=-1"]), 2);
    assert_eq!(code(&["certify", "--set", "nope=1"]), 2);
    assert_eq!(code(&["sweep", "--dim", "pi:0:1:3"]), 2);
    assert_eq!(code(&["audit", "--class", "NPE-FSV"]), 2);
    // I/O errors.
    assert_eq!(
        code(&["--config", "/definitely/not/here.toml", "validate"]),
        3
    );
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let under_file = blocker.join("out");
    assert_eq!(
        code(&["benchmark", "--out", under_file.to_str().unwrap()]),
        3
    );
}

#[test]
fn config_file_and_overrides_layer_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("params.toml");
    fs::write(&cfg, "pi = 0.3\nrho = 0.6\n").unwrap();
    let text = stdout(&[
        "--config",
        cfg.to_str().unwrap(),
        "--set",
        "rho=0.7",
        "validate",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["params"]["pi"], 0.3);
    assert_eq!(doc["params"]["rho"], 0.7);
    assert_eq!(doc["params"]["beta"], 0.5);
}

#[test]
fn presets_are_byte_identical_across_runs() {
    for preset in Preset::ALL {
        let run = || {
            let dir = tempfile::tempdir().unwrap();
            let status = Command::new(env!("CARGO_BIN_EXE_pbe"))
                .args(["figure", preset.name(), "--seed", "7", "--out"])
                .arg(dir.path())
                .status()
                .unwrap();
            assert!(status.success());
            let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir.path())
                .unwrap()
                .map(|e| {
                    let e = e.unwrap();
                    (
                        e.file_name().to_string_lossy().into_owned(),
                        fs::read(e.path()).unwrap(),
                    )
                })
                .collect();
            files.sort();
            files
        };
        let (a, b) = (run(), run());
        assert_eq!(a, b, "{}", preset.name());
        assert!(a.iter().any(|(n, _)| n == "figure.meta.json"));
    }
}

#[test]
fn sidecar_records_configuration_and_version() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let status = pbe(&[
        "sweep",
        "--dim",
        "lambda:0.1:0.9:5",
        "--outputs",
        "welfare,benchmarks",
        "--out",
        out,
    ]);
    assert!(status.status.success());
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(Path::new(out).join("sweep.meta.json")).unwrap())
            .unwrap();
    assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(meta["csv_schema"], 1);
    assert_eq!(meta["config"]["dims"][0]["name"], "lambda");
    assert_eq!(meta["config"]["dims"][0]["steps"], 5);
    assert_eq!(
        meta["files"],
        serde_json::json!(["welfare.csv", "benchmarks.csv"])
    );
    let welfare = fs::read_to_string(Path::new(out).join("welfare.csv")).unwrap();
    let (_, rows) = records(&welfare);
    assert!(rows.len() >= 5);
}

#[test]
fn empty_sweep_evaluates_one_point() {
    let (_, rows) = records(&stdout(&["sweep", "--outputs", "certificates"]));
    // One point, one row per class.
    assert_eq!(rows.len(), EquilibriumClass::ALL.len());
    let (_, rows) = records(&stdout(&["sweep", "--outputs", "benchmarks"]));
    assert_eq!(rows.len(), 1);
}

#[test]
fn lambda_sweep_at_fig4_parameters_shows_the_verdict_flip() {
    let text = stdout(&[
        "sweep",
        "--set",
        "E=0.85",
        "--set",
        "pi=0.7",
        "--set",
        "rho=0.85",
        "--set",
        "beta=0.9",
        "--dim",
        "lambda:0.01:0.99:99",
    ]);
    let (header, rows) = records(&text);
    let (l, c) = (
        header.iter().position(|h| h == "lambda").unwrap(),
        header.iter().position(|h| h == "class").unwrap(),
    );
    let mut flips = Vec::new();
    for w in rows.windows(2) {
        if w[0][c] != w[1][c] {
            flips.push((
                w[0][l].parse::<f64>().unwrap(),
                w[0][c].clone(),
                w[1][c].clone(),
            ));
        }
    }
    assert_eq!(flips.len(), 1, "{flips:?}");
    let (at, from, to) = &flips[0];
    assert_eq!((from.as_str(), to.as_str()), ("PECB", "NPE-SF"));
    assert!((at - 0.41).abs() < 0.011, "{at}");
}

#[test]
fn beta_sweep_of_benchmarks_crosses_zero_at_beta_tilde() {
    for lambda in ["0", "1"] {
        let text = stdout(&[
            "sweep",
            "--set",
            &format!("lambda={lambda}"),
            "--dim",
            "beta:0.05:0.95:19",
            "--outputs",
            "benchmarks",
        ]);
        let (header, rows) = records(&text);
        let col = |n: &str| header.iter().position(|h| h == n).unwrap();
        let (b, d, bt) = (col("beta"), col("delta_eu"), col("beta_tilde"));
        let values: Vec<(f64, f64)> = rows
            .iter()
            .map(|r| (r[b].parse().unwrap(), r[d].parse().unwrap()))
            .collect();
        let cross = values
            .windows(2)
            .find(|w| w[0].1 > 0.0 && w[1].1 <= 0.0)
            .expect("sign change");
        let beta_tilde: f64 = rows[0][bt].parse().unwrap();
        assert!(cross[0].0 < beta_tilde && beta_tilde <= cross[1].0);
        assert_eq!(beta_tilde, 0.25);
    }
}

#[test]
fn figure_class_tags_agree_with_the_certifier() {
    for preset in [Preset::Fig1, Preset::Fig3, Preset::Fig4] {
        for table in figure_tables(preset, &RawParams::default(), &[], 99).unwrap() {
            let (lc, cc) = (
                table.column("lambda").unwrap(),
                table.column("class").unwrap(),
            );
            let base = preset.apply(&RawParams::default());
            let mut base = base;
            if let Some(beta) = table.name.strip_prefix("fig4_beta_") {
                base.beta = beta.parse().unwrap();
            }
            let p = base.validate().unwrap();
            for row in &table.rows {
                let l = row[lc].as_f64().unwrap();
                let at = p.with_lambda(l).unwrap();
                let tag = row[cc].as_str().unwrap();
                if tag == "none" {
                    assert!(EquilibriumClass::ALL
                        .iter()
                        .all(|c| !certify(*c, &at).map(|x| x.verdict).unwrap_or(false)));
                } else {
                    let class: EquilibriumClass = tag.parse().unwrap();
                    assert!(
                        certify(class, &at).unwrap().verdict,
                        "{} {tag} at {l}",
                        table.name
                    );
                }
            }
        }
    }
}

#[test]
fn fig5_tags_pecb_and_peaks_at_one_half() {
    let tables = figure_tables(Preset::Fig5, &RawParams::default(), &[], 99).unwrap();
    let t = &tables[0];
    let (lc, zc, cc) = (
        t.column("lambda").unwrap(),
        t.column("zeta").unwrap(),
        t.column("class").unwrap(),
    );
    let best = t
        .rows
        .iter()
        .max_by(|a, b| a[zc].as_f64().unwrap().total_cmp(&b[zc].as_f64().unwrap()))
        .unwrap();
    assert_eq!(best[lc].as_f64(), Some(0.5));
    assert!(t.rows.iter().all(|r| r[cc].as_str() == Some("PECB")));
}

#[test]
fn audit_reports_deviations_and_monte_carlo_as_json() {
    let text = stdout(&["audit", "--class", "PECB", "--reps", "20000", "--seed", "5"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc[0]["class"], "PECB");
    assert_eq!(doc[0]["audit"]["passes"], true);
    assert_eq!(doc[0]["simulation"]["replications"], 20000);
    assert_eq!(doc[0]["simulation"]["seed"], 5);
    // An uncertified class can still be audited on request, and then fails.
    let text = stdout(&["audit", "--class", "NPE-FSV", "--unchecked"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc[0]["audit"]["passes"], false);
}

#[test]
fn single_point_commands_emit_json_and_csv() {
    let doc: serde_json::Value = serde_json::from_str(&stdout(&["certify"])).unwrap();
    assert_eq!(doc.as_array().unwrap().len(), 5);
    let (header, rows) = records(&stdout(&["certify", "--class", "pecb", "--format", "csv"]));
    assert_eq!(rows.len(), 1);
    assert_eq!(
        rows[0][header.iter().position(|h| h == "verdict").unwrap()],
        "true"
    );
    let doc: serde_json::Value = serde_json::from_str(&stdout(&["benchmark"])).unwrap();
    assert_eq!(doc["beta_tilde"], 0.25);
    let doc: serde_json::Value =
        serde_json::from_str(&stdout(&["welfare", "--set", "lambda=1"])).unwrap();
    assert_eq!(doc[0]["class"], "benchmark");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&["selection"])).unwrap();
    assert_eq!(doc["pecb_certified"], true);
}
