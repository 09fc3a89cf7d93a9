//! End-to-end checks of the `fractel` binary: solve outputs, config
//! validation exit codes, compare modes, selftest plumbing.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fractel() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fractel"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fractel-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn telegraph_config(alpha: f64) -> String {
    format!(
        r#"{{
        "equation": "telegraph",
        "frac": {{ "alpha": {alpha}, "lambda": 1.0 }},
        "symbol": {{ "kind": "laplacian" }},
        "initial": {{ "form": "delta" }},
        "dimension": 1,
        "grid": {{ "min": -2.0, "max": 2.0, "points": 21 }},
        "times": [1.0],
        "routes": ["analytic"]
    }}"#
    )
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

#[test]
fn solve_writes_csv_and_manifest() {
    let dir = tmp_dir("solve");
    let cfg = write_config(&dir, "cfg.json", &telegraph_config(1.0));
    let out = run(fractel().args(["solve", "--config"]).arg(&cfg).arg("--out").arg(&dir));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.join("telegraph_analytic_t0.csv")).unwrap();
    assert!(csv.starts_with("# route=analytic,d=1"));
    assert_eq!(csv.lines().count(), 2 + 21);
    // field is symmetric and positive at the center
    let rows: Vec<(f64, f64)> = csv
        .lines()
        .skip(2)
        .map(|l| {
            let mut it = l.split(',');
            (
                it.next().unwrap().parse().unwrap(),
                it.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    let mid = rows[10];
    assert_eq!(mid.0, 0.0);
    assert!(mid.1 > 0.0);
    assert!((rows[2].1 - rows[18].1).abs() < 1e-12);
    let manifest = std::fs::read_to_string(dir.join("manifest.json")).unwrap();
    assert!(manifest.contains("\"command\": \"solve\""));
    assert!(manifest.contains("tolerances"));
}

#[test]
fn invalid_alpha_exits_2_naming_the_bound() {
    let dir = tmp_dir("badalpha");
    let cfg = write_config(&dir, "cfg.json", &telegraph_config(1.5));
    let out = run(fractel().args(["solve", "--config"]).arg(&cfg).arg("--out").arg(&dir));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("alpha in (0, 1]"), "stderr: {err}");
}

#[test]
fn compare_file_with_itself_is_zero() {
    let dir = tmp_dir("cmp");
    let cfg = write_config(&dir, "cfg.json", &telegraph_config(1.0));
    assert!(run(fractel().args(["solve", "--config"]).arg(&cfg).arg("--out").arg(&dir))
        .status
        .success());
    let csv = dir.join("telegraph_analytic_t0.csv");
    let out = run(fractel()
        .arg("compare")
        .arg(&csv)
        .arg(&csv)
        .args(["--mode", "abs", "--threshold", "0.0"]));
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("max=0.0"), "stdout: {text}");
}

#[test]
fn compare_rejects_mismatched_grids() {
    let dir = tmp_dir("cmpbad");
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    std::fs::write(&a, "x,value\n0.0,1.0\n1.0,2.0\n").unwrap();
    std::fs::write(&b, "x,value\n0.0,1.0\n1.5,2.0\n").unwrap();
    let out = run(fractel().arg("compare").arg(&a).arg(&b));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compare_sigma_mode_uses_stderr_columns() {
    let dir = tmp_dir("cmpsigma");
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    std::fs::write(&a, "x,mean,stderr\n0.0,1.00,0.05\n1.0,2.00,0.05\n").unwrap();
    std::fs::write(&b, "x,mean,stderr\n0.0,1.05,0.05\n1.0,1.95,0.05\n").unwrap();
    // |Δ| = 0.05, σ = 0.0707 → 0.707 sigma, within 3
    let out = run(fractel()
        .arg("compare")
        .arg(&a)
        .arg(&b)
        .args(["--mode", "sigma", "--threshold", "3.0"]));
    assert!(out.status.success());
    // and fails a 0.5-sigma threshold
    let out = run(fractel()
        .arg("compare")
        .arg(&a)
        .arg(&b)
        .args(["--mode", "sigma", "--threshold", "0.5"]));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selftest_unknown_suite_exits_2() {
    let out = run(fractel().args(["selftest", "--suite", "bogus"]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_specfun_suite_passes_and_writes_report() {
    let dir = tmp_dir("selftest");
    let report = dir.join("report.json");
    let out = run(fractel()
        .args(["selftest", "--suite", "specfun", "--json"])
        .arg(&report));
    assert!(
        out.status.success(),
        "stdout: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS specfun.ml_half_erf"));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["passed"], serde_json::Value::Bool(true));
    assert!(doc["checks"].as_array().unwrap().len() >= 4);
}

#[test]
fn epd_solve_routes_agree() {
    let dir = tmp_dir("epd");
    let cfg = write_config(
        &dir,
        "cfg.json",
        r#"{
        "equation": "epd",
        "lambda_epd": 0.7,
        "symbol": { "kind": "fractional_laplacian", "beta": 1.5 },
        "initial": { "form": "gaussian", "center": 0.0, "width": 1.0 },
        "dimension": 1,
        "grid": { "min": -3.0, "max": 3.0, "points": 13 },
        "times": [0.8],
        "routes": ["epd-bessel", "epd-ek"]
    }"#,
    );
    let out = run(fractel().args(["solve", "--config"]).arg(&cfg).arg("--out").arg(&dir));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let a = dir.join("epd_epd-bessel_t0.csv");
    let b = dir.join("epd_epd-ek_t0.csv");
    let out = run(fractel()
        .arg("compare")
        .arg(&a)
        .arg(&b)
        .args(["--mode", "abs", "--threshold", "1e-5"]));
    assert!(out.status.success(), "routes disagree");
}
