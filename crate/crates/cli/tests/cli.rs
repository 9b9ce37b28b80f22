use std::process::{Command, Output};

use serde_json::Value;

fn edgereg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgereg"))
        .args(args)
        .env_remove("EDGEREG_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn reg_of_pentagon_square() {
    let out = edgereg(&["reg", "Dhc", "--power", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "4");
    let oracle = edgereg(&["reg", "Dhc", "--power", "2", "--oracle"]);
    assert_eq!(stdout(&oracle).trim(), "4");
}

#[test]
fn reg_accepts_edge_list_json() {
    let out = edgereg(&["reg", r#"{"n":4,"edges":[[0,1],[2,3]]}"#]);
    assert_eq!(stdout(&out).trim(), "3");
}

#[test]
fn reg_rejects_edgeless_graph() {
    let out = edgereg(&["reg", "B?"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariants_of_pentagon() {
    let out = edgereg(&["invariants", "Dhc"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["beta"], 2);
    assert_eq!(v["nu"], 1);
    assert_eq!(v["gap_free"], true);
    assert_eq!(v["co_chordal"], false);
    assert_eq!(v["local_reg_max"], 2);
}

#[test]
fn colon_graph_of_pentagon() {
    let out = edgereg(&["colon-graph", "Dhc", "--edges", "0-1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("Dhk"));
    let pairs: Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(pairs.as_array().unwrap().len(), 1);
    assert_eq!(pairs[0]["u"], 2);
    assert_eq!(pairs[0]["v"], 4);
    assert_eq!(pairs[0]["path"], serde_json::json!([2, 1, 0, 4]));
}

#[test]
fn colon_graph_rejects_foreign_edge() {
    let out = edgereg(&["colon-graph", "Dhc", "--edges", "0-2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ideal_colon_adds_even_connected_pair() {
    let out = edgereg(&[
        "ideal", "--graph", "Dhc", "colon", "--s", "2", "--by", "x0*x1",
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let gens = v["gens"].as_array().unwrap();
    assert_eq!(gens.len(), 6);
    assert!(gens.contains(&serde_json::json!([0, 0, 1, 0, 1])));
}

#[test]
fn ideal_power_and_polarize() {
    let out = edgereg(&["ideal", "--graph", "Dhc", "power"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["gens"].as_array().unwrap().len(), 15);
    let out = edgereg(&["ideal", "--graph", "Dhc", "polarize", "--s", "2"]);
    assert!(out.status.success());
}

#[test]
fn verify_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = edgereg(&[
        "verify",
        "--suite",
        "lower-bound",
        "--n",
        "4",
        "--s",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("suite\tgraphs\tchecks\tskipped\tviolations\tpass\twall_ms"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["reports"][0]["suite"], "lower-bound");
    assert_eq!(v["reports"][0]["pass"], true);
}

#[test]
fn injected_fault_fails_with_violation() {
    let out = edgereg(&[
        "verify",
        "--suite",
        "lower-bound",
        "--n",
        "4",
        "--s",
        "1",
        "--inject-fault",
        "nu-off-by-one",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("A_"));
}

#[test]
fn unknown_suite_is_an_error() {
    let out = edgereg(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reads_graph_file_and_fills_cache() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.g6");
    std::fs::write(&file, "Dhc\nC~\n").unwrap();
    let cache = dir.path().join("cache");
    let out = Command::new(env!("CARGO_BIN_EXE_edgereg"))
        .args([
            "verify",
            "--suite",
            "matching-bound",
            "--s",
            "2",
            "--graphs",
            file.to_str().unwrap(),
        ])
        .env("EDGEREG_CACHE_DIR", &cache)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(cache.join("regularity-char2.json")).unwrap();
    let entries: Vec<(String, u32, u32)> = serde_json::from_str(&text).unwrap();
    assert!(entries.contains(&("C~".to_string(), 2, 4)));
}
