use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use affinet::io::{SWEEP_HEADER, TIMESERIES_HEADER};

fn affinet(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affinet"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

fn lines(path: &Path) -> Vec<String> {
    fs::read_to_string(path).unwrap().lines().map(str::to_owned).collect()
}

#[test]
fn run_writes_one_row_per_step() {
    let dir = tempfile::tempdir().unwrap();
    let out = affinet(&["run", "--seed", "1", "--dump-edges"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = lines(&dir.path().join("timeseries.csv"));
    assert_eq!(rows[0], TIMESERIES_HEADER);
    assert_eq!(rows.len(), 1001);
    assert!(rows[1000].starts_with("1000,"));
    let edges = lines(&dir.path().join("edges.csv"));
    assert_eq!(edges[0], "source,target,tier");

    let json: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(json["seed"], 1);
    assert_eq!(json["final_row"]["step"], 1000);
    let links: u64 = json["final_row"]["tier_counts"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(links as usize, edges.len() - 1);
}

#[test]
fn zero_steps_gives_header_only() {
    let dir = tempfile::tempdir().unwrap();
    assert!(affinet(&["run", "--steps", "0"], dir.path()).status.success());
    assert_eq!(lines(&dir.path().join("timeseries.csv")), vec![TIMESERIES_HEADER.to_owned()]);
    let json: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(json["final_row"]["step"], 0);
    assert_eq!(json["final_row"]["density"], 0.0);
}

#[test]
fn summary_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        assert!(affinet(&["run", "--seed", "77", "--steps", "50"], d).status.success());
    }
    assert_eq!(fs::read(a.join("summary.json")).unwrap(), fs::read(b.join("summary.json")).unwrap());
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    fs::write(&cfg, "aff-radius = 0.3\nsteps = 3\n").unwrap();
    let out = affinet(&["run", "--config", cfg.to_str().unwrap(), "--aff-radius", "0.1"], dir.path());
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(json["params"]["aff-radius"], 0.1);
    assert_eq!(json["steps"], 3);
}

#[test]
fn unknown_config_key_fails_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    fs::write(&cfg, "affinity-radius = 0.3\n").unwrap();
    let out_dir = dir.path().join("out");
    let out = affinet(&["run", "--config", cfg.to_str().unwrap()], &out_dir);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("affinity-radius"));
    assert!(!out_dir.exists());
}

#[test]
fn invalid_parameter_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let out = affinet(&["run", "--max-network", "100"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("max-network"));
}

#[test]
fn sweep_writes_one_row_per_value() {
    let dir = tempfile::tempdir().unwrap();
    let out = affinet(
        &["sweep", "--param", "max-change", "--from", "0", "--to", "1", "--step", "0.2", "--reps", "2", "--steps", "20"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = lines(&dir.path().join("sweep.csv"));
    assert_eq!(rows[0], SWEEP_HEADER);
    assert_eq!(rows.len(), 7);
    assert!(rows[6].starts_with("max-change,1.0000000000000000e0,2,"));
}

#[test]
fn sweep_rejects_unsweepable_param() {
    let dir = tempfile::tempdir().unwrap();
    let out = affinet(&["sweep", "--param", "seed", "--values", "1,2"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("seed"));
}

#[test]
fn sensitivity_table_covers_every_cell() {
    let dir = tempfile::tempdir().unwrap();
    let out = affinet(
        &["sensitivity", "--deltas", "-0.1,0.1", "--reps", "2", "--baseline-reps", "2", "--steps", "10"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = lines(&dir.path().join("sensitivity.csv"));
    // five parameters, two deltas, two outputs
    assert_eq!(rows.len(), 1 + 5 * 2 * 2);
}

#[test]
fn unwritable_output_leaves_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let out = affinet(&["run", "--steps", "2"], &blocker.join("sub"));
    assert!(!out.status.success());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}
