use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const SHORT: &str = "[replication]\ncount = 2\nwarmup = 1440.0\nhorizon = 1440.0\ndrain = 720.0\n";

fn edflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edflow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn short_config(dir: &Path) -> String {
    let path = dir.join("short.toml");
    fs::write(&path, SHORT).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn parse_error_exits_3() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.toml");
    fs::write(&path, "[replication\ncount = 2\n").unwrap();
    let out = edflow(&["--config", path.to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn invalid_value_exits_4_and_names_the_key() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.toml");
    fs::write(&path, "[imaging]\norder_to_begin = [10.0, 60.0, 55.0]\n").unwrap();
    let out = edflow(&["--config", path.to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("imaging.order_to_begin"), "{err}");
}

#[test]
fn missing_config_exits_1() {
    let out = edflow(&["--config", "/nonexistent/edflow.toml", "validate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn printed_defaults_are_a_valid_config() {
    let out = edflow(&["print-defaults"]);
    assert!(out.status.success());
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("defaults.toml");
    fs::write(&path, &out.stdout).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("[calibration]"));
    assert_eq!(
        edflow::RunConfig::from_path(&path).unwrap(),
        edflow::RunConfig::default()
    );
}

#[test]
fn validate_writes_a_deterministic_table() {
    let dir = TempDir::new().unwrap();
    let cfg = short_config(dir.path());
    let mut tables = Vec::new();
    for sub in ["a", "b"] {
        let out_dir = dir.path().join(sub);
        let out = edflow(&["--config", &cfg, "--out", out_dir.to_str().unwrap(), "validate"]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        tables.push(fs::read_to_string(out_dir.join("table4.csv")).unwrap());
    }
    assert_eq!(tables[0], tables[1]);
    let lines: Vec<&str> = tables[0].lines().collect();
    assert_eq!(lines[0], "esi,actual_min,simulated_min,ci_half_width,percent_diff");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("1,149.0,"));
}

#[test]
fn seed_flag_changes_results() {
    let dir = TempDir::new().unwrap();
    let cfg = short_config(dir.path());
    let mut tables = Vec::new();
    for seed in ["1", "2"] {
        let out_dir = dir.path().join(seed);
        let out = edflow(&["--config", &cfg, "--seed", seed, "--out", out_dir.to_str().unwrap(), "validate"]);
        assert!(out.status.success());
        tables.push(fs::read_to_string(out_dir.join("table4.csv")).unwrap());
    }
    assert_ne!(tables[0], tables[1]);
}

#[test]
fn sweep_delays_splits_tables() {
    let dir = TempDir::new().unwrap();
    let cfg = short_config(dir.path());
    let out_dir = dir.path().join("out");
    let out = edflow(&[
        "--config", &cfg, "--out", out_dir.to_str().unwrap(),
        "sweep-delays", "--levels", "0.2,0.5", "--dimension", "otb,both",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let t5 = fs::read_to_string(out_dir.join("table5.csv")).unwrap();
    let t6 = fs::read_to_string(out_dir.join("table6.csv")).unwrap();
    assert_eq!(t5.lines().count(), 3);
    assert!(t5.lines().nth(1).unwrap().starts_with("0.20,otb,"));
    assert!(t6.lines().nth(2).unwrap().starts_with("0.50,both,"));
}

#[test]
fn sweep_bundling_by_name() {
    let dir = TempDir::new().unwrap();
    let cfg = short_config(dir.path());
    let out_dir = dir.path().join("out");
    let out = edflow(&[
        "--config", &cfg, "--out", out_dir.to_str().unwrap(),
        "sweep-bundling", "--scenarios", "s2,S8",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let t7 = fs::read_to_string(out_dir.join("table7.csv")).unwrap();
    let names: Vec<&str> = t7.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(names, ["S2", "S8"]);
}

#[test]
fn unknown_bundling_scenario_fails() {
    let dir = TempDir::new().unwrap();
    let cfg = short_config(dir.path());
    let out = edflow(&["--config", &cfg, "--out", dir.path().to_str().unwrap(), "sweep-bundling", "--scenarios", "S9"]);
    assert!(!out.status.success());
    assert!(!dir.path().join("table7.csv").exists());
}

#[test]
fn run_writes_event_log() {
    let dir = TempDir::new().unwrap();
    let cfg = short_config(dir.path());
    let log = dir.path().join("events.jsonl");
    let out = edflow(&[
        "--config", &cfg, "--jobs", "1", "--out", dir.path().to_str().unwrap(),
        "run", "--event-log", log.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.starts_with("overall mean "), "{stdout}");
    assert_eq!(fs::read_to_string(dir.path().join("replications.csv")).unwrap().lines().count(), 3);
    let text = fs::read_to_string(&log).unwrap();
    let first = text.lines().next().unwrap();
    assert!(first.starts_with('{') && first.contains("\"kind\""), "{first}");
    assert!(text.lines().count() > 100);
}
