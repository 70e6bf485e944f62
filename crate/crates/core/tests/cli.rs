use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn widthcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_widthcert"))
        .args(args)
        .env_remove("WIDTHCERT_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn volume_query_echoes_inputs() {
    let out = widthcert(&["volume", "--dim", "3", "--sigma", "0", "--radius", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["input"]["dim"], 3);
    let vol = v["volume"].as_f64().unwrap();
    assert!((vol - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-12);
}

#[test]
fn negative_sigma_and_mscal() {
    let out = widthcert(&["volume", "--dim", "2", "--sigma", "-2", "--radius", "0.5"]);
    assert!(out.status.success());
    let vol = json(&out)["volume"].as_f64().unwrap();
    let out = widthcert(&["mscal", "--dim", "2", "--vol", &vol.to_string(), "--radius", "0.5"]);
    assert!(out.status.success());
    assert!((json(&out)["sigma"].as_f64().unwrap() + 2.0).abs() < 1e-6);
}

#[test]
fn fiber_radius_query() {
    let out = widthcert(&["fiber-radius", "--dim", "3", "--sigma", "2", "--kappa", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["certified"], true);
    assert!(v["fiber_radius"].as_f64().unwrap() < 0.5);
}

#[test]
fn net_query() {
    let out = widthcert(&["net", "--dims", "1,1", "--delta", "0.5", "--seed", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["net"]["points"].as_array().unwrap().len(), 4);
    assert_eq!(v["pass"], true);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(widthcert(&["run", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(widthcert(&["run", "--suite", "volume", "--n", "0"]).status.code(), Some(2));
    assert_eq!(widthcert(&["run", "--suite", "volume", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(widthcert(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(widthcert(&["volume", "--dim", "3", "--sigma", "6", "--radius", "4"]).status.code(), Some(2));
}

#[test]
fn bad_ring_file_exit_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.ring");
    fs::write(&path, "RING broken\nDIM 2\nBASIS 0 1 1\n").unwrap();
    let out = widthcert(&["ring", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "{err}");
}

#[test]
fn config_file_and_env_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# volume checks\nsuite = volume\nformat = tsv\ntol = 1e-5\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_widthcert"))
        .args(["run", "--config", cfg.to_str().unwrap(), "--seed", "9"])
        .env("WIDTHCERT_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let tsv = fs::read_to_string(dir.path().join("volume.tsv")).unwrap();
    assert!(tsv.contains("# seed\t9"));
    assert!(tsv.contains("# tol\t0.00001"));
    assert!(tsv.contains("# pass\ttrue"));

    fs::write(&cfg, "suite = volume\nbogus = 1\n").unwrap();
    let out = widthcert(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn check_failure_exits_1_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("hopf.json");
    let out = widthcert(&["run", "--suite", "hopf", "--ring", "missing.ring", "--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // A tolerance tighter than quadrature accuracy makes the round-trip checks fail.
    let report = dir.path().join("volume.json");
    let out = widthcert(&["run", "--suite", "volume", "--tol", "1e-15", "--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["pass"], false);
    assert!(v["records"].as_array().unwrap().iter().any(|r| r["status"] == "fail"));
}

#[test]
fn hopf_suite_with_bundled_ring_file() {
    let dir = tempfile::tempdir().unwrap();
    let ring = concat!(env!("CARGO_MANIFEST_DIR"), "/data/cp2.ring");
    let out = widthcert(&["run", "--suite", "hopf", "--ring", ring, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("hopf.json")).unwrap()).unwrap();
    let records = v["records"].as_array().unwrap();
    let cp2 = records.iter().find(|r| r["id"] == "hopf.cp2_vanishes").unwrap();
    assert_eq!(cp2["measured"], false);
    assert_eq!(cp2["status"], "pass");
    assert!(records.iter().any(|r| r["id"] == "ring.cp2.wu_class" && r["measured"] == "2.0"));
}
