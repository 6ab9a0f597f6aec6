use std::path::Path;
use std::process::Command;

use fbcs_core::harness::{run_scenario, RunConfig, Scenario};

const SMALL: &str = r#"
seed = 3

[grid]
n = 8

[time]
steps = 8
horizon = 0.5
"#;

fn fbcs(dir: &Path, args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fbcs")).current_dir(dir).args(args).output().expect("binary runs")
}

fn small_config(dir: &Path) -> String {
    let p = dir.join("run.toml");
    std::fs::write(&p, SMALL).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn config_prints_effective_values() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let out = fbcs(dir.path(), &["--config", &cfg, "--seed", "9", "config"]);
    assert!(out.status.success());
    let back = RunConfig::from_toml(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(back.seed, 9);
    assert_eq!(back.grid.n, 8);
    assert_eq!(back.time.steps, 8);
}

#[test]
fn simulate_then_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let out = fbcs(dir.path(), &["--config", &cfg, "--out-dir", "out", "simulate"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = dir.path().join("out");
    assert!(run.join("report.jsonl").exists());
    assert!(run.join("norms.csv").exists());
    assert!(run.join("trajectory").join("manifest.json").exists());

    let rep = fbcs(dir.path(), &["report", run.to_str().unwrap()]);
    assert!(rep.status.success());
    assert!(String::from_utf8_lossy(&rep.stdout).contains("converged = true"));
}

#[test]
fn simulate_reduced_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let out = fbcs(dir.path(), &["--config", &cfg, "--out-dir", "ns", "simulate", "--scenario", "ns-critical"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_symbols_both_conventions() {
    let dir = tempfile::tempdir().unwrap();
    let ok = fbcs(dir.path(), &["--out-dir", "a", "verify", "symbols", "--samples", "300"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = fbcs(dir.path(), &["--out-dir", "b", "--convention", "literal", "verify", "symbols", "--samples", "300"]);
    assert_eq!(bad.status.code(), Some(1), "literal entries must fail the oracle check");
    assert!(dir.path().join("b").join("symbols.jsonl").exists());
}

#[test]
fn errors_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = fbcs(dir.path(), &["--config", "missing.toml", "config"]);
    assert_eq!(out.status.code(), Some(2));
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "[grid]\nn = 2\n").unwrap();
    let out = fbcs(dir.path(), &["--config", bad.to_str().unwrap(), "simulate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn runs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::from_toml(SMALL).unwrap();
    cfg.scenario = Scenario::Fbcs;
    cfg.out_dir = dir.path().join("a");
    let (a, _) = run_scenario(&cfg).unwrap();
    cfg.out_dir = dir.path().join("b");
    let (b, _) = run_scenario(&cfg).unwrap();
    assert_eq!(a, b);
    let ra = std::fs::read(dir.path().join("a").join("report.jsonl")).unwrap();
    let rb = std::fs::read(dir.path().join("b").join("report.jsonl")).unwrap();
    assert_eq!(ra, rb);
}
