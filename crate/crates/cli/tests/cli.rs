//! End-to-end tests of the `benqo` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn benqo(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_benqo"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn assert_success(out: &Output) {
    assert!(
        out.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn gen_emits_parseable_one_based_instances() {
    let dir = tempfile::tempdir().unwrap();
    let out = benqo(
        &[
            "gen", "--problem", "maxcut", "--n", "4", "--count", "2", "--seed", "5",
            "--out-dir", "instances",
        ],
        dir.path(),
    );
    assert_success(&out);
    for k in 0..2 {
        let path = dir.path().join(format!("instances/instance_maxcut_n4_{k}.json"));
        let text = fs::read_to_string(&path).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["n"], 4);
        let edges = v["edges"].as_array().unwrap();
        assert_eq!(edges.len(), 6);
        for e in edges {
            let i = e[0].as_u64().unwrap();
            let j = e[1].as_u64().unwrap();
            assert!((1..=4).contains(&i) && (1..=4).contains(&j));
        }
    }
}

#[test]
fn run_is_deterministic_and_report_rebuilds_identical_tables() {
    let dir = tempfile::tempdir().unwrap();
    let config = serde_json::json!({
        "problem": "tsp",
        "sizes": [3],
        "runs": 2,
        "algorithms": ["benqo+ngd", "uniform-baseline"],
        "k_max": 5,
        "budget": 60,
        "base_seed": 42
    });
    fs::write(dir.path().join("config.json"), config.to_string()).unwrap();

    for out_dir in ["a", "b"] {
        let out = benqo(
            &["run", "--config", "config.json", "--out-dir", out_dir],
            dir.path(),
        );
        assert_success(&out);
    }
    for name in ["records.jsonl", "summary.csv", "lr_table.csv"] {
        let a = fs::read(dir.path().join("a").join(name)).unwrap();
        let b = fs::read(dir.path().join("b").join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }

    let records = fs::read_to_string(dir.path().join("a/records.jsonl")).unwrap();
    assert_eq!(records.lines().count(), 4);
    let first: serde_json::Value = serde_json::from_str(records.lines().next().unwrap()).unwrap();
    assert_eq!(first["instance_id"], "tsp-n3-r0");
    assert_eq!(first["algorithm"], "benqo+ngd");
    assert!(first["final"]["fr"].is_number());

    // Rebuilding the report from stored records must reproduce the very
    // same table bytes the run emitted.
    let out = benqo(
        &["report", "--in-dir", "a", "--out-dir", "c"],
        dir.path(),
    );
    assert_success(&out);
    for name in ["summary.csv", "lr_table.csv"] {
        let fresh = fs::read(dir.path().join("a").join(name)).unwrap();
        let rebuilt = fs::read(dir.path().join("c").join(name)).unwrap();
        assert_eq!(fresh, rebuilt, "{name} changed when rebuilt from records");
    }
}

#[test]
fn run_overrides_seed_from_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let config = serde_json::json!({
        "problem": "maxcut",
        "sizes": [3],
        "runs": 1,
        "algorithms": ["vqe+ngd"],
        "k_max": 3,
        "base_seed": 1
    });
    fs::write(dir.path().join("config.json"), config.to_string()).unwrap();
    let out = benqo(
        &["run", "--config", "config.json", "--out-dir", "x", "--seed", "2"],
        dir.path(),
    );
    assert_success(&out);
    let out = benqo(
        &["run", "--config", "config.json", "--out-dir", "y"],
        dir.path(),
    );
    assert_success(&out);
    let x = fs::read(dir.path().join("x/records.jsonl")).unwrap();
    let y = fs::read(dir.path().join("y/records.jsonl")).unwrap();
    assert_ne!(x, y, "seed override must change the records");
}

#[test]
fn landscape_writes_the_grid_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = benqo(
        &[
            "landscape", "--algorithm", "qaoa", "--n", "3", "--resolution", "3",
            "--seed", "9", "--out-dir", "land",
        ],
        dir.path(),
    );
    assert_success(&out);
    let text = fs::read_to_string(dir.path().join("land/landscape_qaoa_9.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "i,j,theta1,theta2,loss");
    assert_eq!(lines.len(), 10);
    assert!(lines[1].starts_with("0,0,"));
}

#[test]
fn bad_arguments_fail_with_context() {
    let dir = tempfile::tempdir().unwrap();
    let out = benqo(
        &[
            "gen", "--problem", "knapsack", "--n", "4", "--seed", "1", "--out-dir", ".",
        ],
        dir.path(),
    );
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("knapsack"), "stderr: {stderr}");

    let out = benqo(&["run", "--config", "missing.json", "--out-dir", "z"], dir.path());
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("missing.json"), "stderr: {stderr}");
}
