//! The `integrable` binary end to end.

use std::path::Path;
use std::process::{Command, Output};

fn bin(dir: &Path, args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_integrable"));
    c.args(args)
        .current_dir(dir)
        .env_remove("INTEGRABLE_OUT_DIR")
        .env_remove("INTEGRABLE_TOL");
    for (k, v) in envs {
        c.env(k, v);
    }
    c.output().unwrap()
}

fn text(b: &[u8]) -> String {
    String::from_utf8(b.to_vec()).unwrap()
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = bin(dir.path(), &["verify", "--model", "cubic-eps-plus", "--region", "1,1,2,2", "--n", "100", "--tol", "1e-8"], &[]);
    assert_eq!(ok.status.code(), Some(0), "{}", text(&ok.stderr));
    let json: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    for key in ["equation_set", "n_points", "max_abs", "mean_abs", "worst_point", "normalization", "pass"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    let bad = bin(dir.path(), &["verify", "--genfun", "E:x^4", "--region", "0.5,-1,1.5,1"], &[]);
    assert_eq!(bad.status.code(), Some(1));
    let malformed = bin(dir.path(), &["verify", "--model", "cubic-eps-plus", "--region", "1,1,x,2"], &[]);
    assert_eq!(malformed.status.code(), Some(2));
    assert!(text(&malformed.stderr).contains("region"));
}

#[test]
fn verify_reads_descriptor_files_and_tolerance_from_env() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("m.json"),
        r#"{"kind": "quartic", "family": "beta0", "params": {"lambda": -12, "epsilon": -1}, "basepoint": [1, 1]}"#,
    )
    .unwrap();
    let out = bin(dir.path(), &["verify", "--model", "m.json", "--n", "30", "--out", "r.json"], &[("INTEGRABLE_TOL", "1e-300")]);
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(json["equation_set"], "PQRU");
    assert!((json["tolerance"].as_f64().unwrap() / 1e-300 - 1.0).abs() < 1e-12);
    std::fs::write(dir.path().join("bad.json"), r#"{"kind": "quartic", "family": "beta9"}"#).unwrap();
    assert_eq!(bin(dir.path(), &["verify", "--model", "bad.json"], &[]).status.code(), Some(2));
}

#[test]
fn integrate_writes_csv_into_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = bin(
        dir.path(),
        &["integrate", "--model", "quartic-ExQ", "--lambda", "-12", "--start", "1,1", "--theta", "0.7", "--dt", "1e-4", "--T", "1", "--stride", "1000"],
        &[("INTEGRABLE_OUT_DIR", d)],
    );
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let summary = text(&out.stdout);
    let drift: f64 = summary.split("I2_drift=").nth(1).unwrap().split(' ').next().unwrap().parse().unwrap();
    assert!(drift < 1e-8, "{summary}");
    let csv = std::fs::read_to_string(dir.path().join("trajectory.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("t,x,y,vx,vy,I1,I2"));
    assert_eq!(csv.lines().count(), 12);
}

#[test]
fn integrate_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let zero = bin(dir.path(), &["integrate", "--model", "quartic-ExQ", "--lambda", "-12", "--T", "0", "--out", "z.csv"], &[]);
    assert_eq!(zero.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(dir.path().join("z.csv")).unwrap().lines().count(), 2);
    assert!(text(&zero.stdout).contains("I2_drift=0.0000000000000000e0"));
    let neg = bin(dir.path(), &["integrate", "--model", "quartic-ExQ", "--lambda", "12"], &[]);
    assert_eq!(neg.status.code(), Some(3));
    assert!(text(&neg.stderr).contains("no real zero-energy motion"));
    let crash = bin(dir.path(), &["integrate", "--model", "cubic-eps-plus", "--theta", "1.0471975511965976", "--dt", "1e-4", "--out", "c.csv"], &[]);
    assert_eq!(crash.status.code(), Some(3));
    assert!(text(&crash.stdout).contains("termination=singular_approach"));
    assert!(std::fs::read_to_string(dir.path().join("c.csv")).unwrap().lines().count() > 100);
}

#[test]
fn sweep_grid_over_lambda_and_theta() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(
        dir.path(),
        &["sweep", "--model", "cubic-eps-plus", "--start", "1.7320508075688772,1", "--lambda", "0.5,1,2", "--theta", "0.3:0.7:3"],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = text(&out.stdout);
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 9);
    for r in rows {
        let cells: Vec<&str> = r.split(',').collect();
        assert_eq!(cells[5], "ok", "{r}");
        assert!(cells[9].parse::<f64>().unwrap() < 1e-6, "{r}");
    }
}

#[test]
fn sweep_flags_domain_cells() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("pm.json"),
        r#"{"kind": "quartic", "family": "beta_pm", "params": {"lambda": 1, "mu": 1, "epsilon": 1, "sigma": -1}, "basepoint": [1.5, 1.5]}"#,
    )
    .unwrap();
    let out = bin(dir.path(), &["sweep", "--model", "pm.json", "--mu", "0.5,2", "--T", "0.1"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let csv = text(&out.stdout);
    let status: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').nth(5).unwrap()).collect();
    assert_eq!(status, vec!["ok", "domain_error"]);
    let empty = bin(dir.path(), &["sweep", "--model", "pm.json", "--mu", "1:2:0"], &[]);
    assert_eq!(empty.status.code(), Some(2));
}

#[test]
fn single_cell_sweep_matches_integrate() {
    let dir = tempfile::tempdir().unwrap();
    let common = ["--model", "quartic-ExQ", "--lambda", "-12", "--theta", "0.7", "--dt", "1e-3", "--T", "0.5"];
    let sweep = bin(dir.path(), &[&["sweep"][..], &common[..]].concat(), &[]);
    let integ = bin(dir.path(), &[&["integrate"][..], &common[..], &["--out", "t.csv"]].concat(), &[]);
    let row = text(&sweep.stdout).lines().nth(1).unwrap().to_string();
    let cells: Vec<&str> = row.split(',').collect();
    let summary = text(&integ.stdout);
    assert_eq!(summary.trim(), format!("I1_max={} I2_drift={} termination={}", cells[8], cells[9], cells[6]));
}

#[test]
fn catalog_and_usage() {
    let dir = tempfile::tempdir().unwrap();
    let list = bin(dir.path(), &["catalog"], &[]);
    assert_eq!(list.status.code(), Some(0));
    assert_eq!(text(&list.stdout).lines().count(), 6);
    let json = bin(dir.path(), &["catalog", "--json"], &[]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().any(|e| e["name"] == "quartic-ExQ"));
    assert_eq!(bin(dir.path(), &["plot"], &[]).status.code(), Some(2));
}
