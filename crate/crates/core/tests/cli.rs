use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fh-spectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Runs `calibrate` into `dir` and returns the calibrated config path.
fn calibrate(dir: &Path) -> String {
    let out = run(&["calibrate", "--out", path(dir)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = fs::read_to_string(dir.join("calibration_report.json")).unwrap();
    assert!(report.contains("NOT-REPRODUCED"));
    let residuals = fs::read_to_string(dir.join("table_residuals.csv")).unwrap();
    assert_eq!(
        residuals.lines().filter(|l| !l.starts_with('#')).count(),
        121
    );
    dir.join("calibrated.conf").to_str().unwrap().to_string()
}

#[test]
fn table_without_mapping_is_refused() {
    let dir = TempDir::new().unwrap();
    let out = run(&["table", "--out", path(dir.path())]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("calibrate"));
}

#[test]
fn calibrated_tables_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let conf = calibrate(dir.path());
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for target in [&a, &b] {
        let out = run(&["table", "--config", &conf, "--out", path(target)]);
        assert_eq!(code(&out), 0);
    }
    for alpha in ["0.001", "0.05", "0.1"] {
        let name = format!("table_alpha_{alpha}.csv");
        let left = fs::read(a.join(&name)).unwrap();
        assert_eq!(left, fs::read(b.join(&name)).unwrap());
        let text = String::from_utf8(left).unwrap();
        assert!(text.contains("best-fit"));
        assert!(text.contains("config_sha256_16"));
        assert!(text.lines().any(|l| l == "n,CO,NO,O2,I2"));
    }
}

#[test]
fn json_table_single_row() {
    let dir = TempDir::new().unwrap();
    let conf = calibrate(dir.path());
    let out = run(&[
        "table",
        "--config",
        &conf,
        "--alpha",
        "0.05",
        "--nmax",
        "0",
        "--format",
        "json",
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(dir.path().join("table_alpha_0.05.json")).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["table"]["rows"].as_array().unwrap().len(), 1);
}

#[test]
fn figure_data_verbs() {
    let dir = TempDir::new().unwrap();
    let out = run(&["figure-data", "no_such_figure", "--out", path(dir.path())]);
    assert_eq!(code(&out), 2);

    let conf = dir.path().join("two.conf");
    fs::write(
        &conf,
        "figure_t_points = 2\nfigure_t_min_timeunit = 1\nfigure_t_max_timeunit = 3\n",
    )
    .unwrap();
    let out = run(&[
        "figure-data",
        "potential_vs_t",
        "--config",
        path(&conf),
        "--molecule",
        "NO",
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(dir.path().join("potential_vs_t_NO.csv")).unwrap();
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 3);
    assert_eq!(data[0], "t,V_exact_eV,V_greene_aldrich_eV");
}

#[test]
fn verify_minimal_and_negative_control() {
    let dir = TempDir::new().unwrap();
    let conf = calibrate(dir.path());
    let out = run(&[
        "verify",
        "--config",
        &conf,
        "--nmax",
        "0",
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("verification.json")).unwrap())
            .unwrap();
    let entries = report["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 12);
    for key in [
        "molecule",
        "alpha",
        "n",
        "closed_form",
        "oracle",
        "rel_err",
        "grid_points",
        "extrapolated",
    ] {
        assert!(entries[0].get(key).is_some(), "missing {key}");
    }

    let out = run(&[
        "verify",
        "--config",
        &conf,
        "--molecule",
        "CO",
        "--nmax",
        "3",
        "--grid-points",
        "64",
        "--no-extrapolation",
        "--no-wavefunctions",
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("refinement failed"));
}

#[test]
fn spectrum_and_wavefunction_to_stdout() {
    let out = run(&[
        "spectrum",
        "--molecule",
        "co",
        "--alpha",
        "0.05",
        "--nmax",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["levels"].as_array().unwrap().len(), 3);

    let out = run(&[
        "wavefunction",
        "--molecule",
        "O2",
        "--alpha",
        "0.1",
        "--level",
        "2",
        "--points",
        "7",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    for key in [
        "# molecule = O2",
        "# n = 2",
        "# alpha = 0.1",
        "# Bn = ",
        "# eps1 = ",
        "# invQ = ",
    ] {
        assert!(text.contains(key), "missing {key}");
    }
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 8);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&run(&["spectrum", "--nmax", "many"])), 2);
    assert_eq!(code(&run(&["spectrum", "--molecule", "XeF"])), 2);
    assert_eq!(code(&run(&["launch"])), 2);
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.conf");
    fs::write(&bad, "alpha_in_seconds = 3\n").unwrap();
    assert_eq!(code(&run(&["spectrum", "--config", path(&bad)])), 2);
}

#[test]
fn molecule_csv_override() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("mols.csv");
    fs::write(&csv, "name,De_eV,te,mu_amu\nHX,4.5,1.3,0.98\n").unwrap();
    let conf = dir.path().join("m.conf");
    fs::write(&conf, format!("molecules_csv = {}\n", path(&csv))).unwrap();
    let out = run(&[
        "spectrum",
        "--config",
        path(&conf),
        "--nmax",
        "0",
        "--alpha",
        "0.05",
    ]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("\nHX,0.05,0,"));
}
