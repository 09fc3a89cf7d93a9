//! Acceptance criterion 13: any `simulate` rerun with identical seed,
//! config and workers is byte-identical — and the fixed split layout makes
//! the worker count itself irrelevant to the bytes.

use std::path::PathBuf;
use std::process::Command;

fn fractel() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fractel"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fractel-repro-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const SIM_CONFIG: &str = r#"{
    "equation": "telegraph",
    "frac": { "alpha": 0.4, "lambda": 1.0 },
    "symbol": { "kind": "laplacian" },
    "initial": { "form": "gaussian", "center": 0.0, "width": 1.0 },
    "dimension": 1,
    "grid": { "min": -2.0, "max": 2.0, "points": 9 },
    "times": [0.5],
    "mc": { "n": 4000, "seed": 42, "workers": 1, "tol_l": 1e-3 }
}"#;

fn run_simulate(dir: &PathBuf, cfg: &PathBuf, workers: &str) -> Vec<u8> {
    let out = fractel()
        .args(["simulate", "--config"])
        .arg(cfg)
        .arg("--out")
        .arg(dir)
        .args(["--workers", workers])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "simulate failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    std::fs::read(dir.join("telegraph_monte-carlo_t0.csv")).unwrap()
}

#[test]
fn acceptance_13_simulate_is_byte_reproducible() {
    let dir_a = tmp_dir("a");
    let cfg = dir_a.join("cfg.json");
    std::fs::write(&cfg, SIM_CONFIG).unwrap();

    let first = run_simulate(&dir_a, &cfg, "1");
    let dir_b = tmp_dir("b");
    let second = run_simulate(&dir_b, &cfg, "1");
    assert_eq!(first, second, "rerun with identical seed/config differs");

    let dir_c = tmp_dir("c");
    let four_workers = run_simulate(&dir_c, &cfg, "4");
    assert_eq!(
        first, four_workers,
        "worker count changed the bytes despite the fixed split layout"
    );
    println!("ACCEPTANCE 13 simulate byte-reproducibility: PASS");
}

#[test]
fn monte_carlo_outside_theorem_regime_exits_2() {
    let dir = tmp_dir("regime");
    let cfg = dir.join("cfg.json");
    std::fs::write(&cfg, SIM_CONFIG.replace("\"alpha\": 0.4", "\"alpha\": 0.6")).unwrap();
    let out = fractel()
        .args(["simulate", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("alpha <= 1/2"), "stderr: {err}");
}

#[test]
fn histogram_mode_for_delta_data() {
    let dir = tmp_dir("hist");
    let cfg = dir.join("cfg.json");
    std::fs::write(
        &cfg,
        SIM_CONFIG.replace(
            r#""initial": { "form": "gaussian", "center": 0.0, "width": 1.0 }"#,
            r#""initial": { "form": "delta" }"#,
        ),
    )
    .unwrap();
    let out = fractel()
        .args(["simulate", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&dir)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.join("telegraph_monte-carlo_hist_t0.csv")).unwrap();
    assert!(csv.lines().count() > 10);
    assert!(csv.starts_with("# route=monte-carlo,histogram"));
}
