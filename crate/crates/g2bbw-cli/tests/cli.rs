//! End-to-end tests of the binary: flag handling, exit codes, output
//! formats, and byte-determinism of the verification report.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2bbw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn coh_spot_query() {
    let out = run(&["coh", "--space", "G", "--sym", "3", "--twist", "-2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema"], "g2bbw/1");
    assert_eq!(doc["command"], "coh");
    assert_eq!(doc["result"][0]["degree"], 1);
    assert_eq!(doc["result"][0]["value"]["exact"], 1);
    assert_eq!(doc["result"][0]["irreps"][0][0], "0,0");
}

#[test]
fn hilbert_examples() {
    let out = run(&["hilbert", "--a", "0", "--b", "1", "--format", "tsv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "7\n");
    let out = run(&["hilbert", "--a", "-1", "--b", "0", "--format", "tsv"]);
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn stability_has_no_witness() {
    let out = run(&["stability", "--d", "1,1,1,2,2,4", "--theta", "-10,1,1,1,1,1"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["result"]["strict_semistable"], serde_json::Value::Null);
    assert_eq!(doc["result"]["candidates"], 358);

    let out = run(&["stability", "--d", "2,2", "--theta", "1,-1"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["result"]["strict_semistable"], "1,1");
}

#[test]
fn push_reports_streams() {
    let out = run(&["push", "--space", "yminus", "--sym", "0", "--twist", "-3"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["result"]["higher"][0]["degree"], 1);
    assert_eq!(doc["result"]["higher"][0]["value"]["exact"], 1);
}

#[test]
fn tilt_check_verdicts() {
    let out = run(&["tilt-check", "--collection", "plus-base", "--format", "tsv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verdict\tcertified-exact"), "{text}");
    assert!(text.contains("Sigma(0) (rank 4)"), "{text}");
}

#[test]
fn verify_is_deterministic_and_green() {
    let a = run(&["verify", "--suite", "all"]);
    assert!(a.status.success());
    let b = run(&["verify", "--suite", "all"]);
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(doc["schema"], "g2bbw/1");
    assert!(doc["claims"].as_array().unwrap().len() >= 40);
}

#[test]
fn verify_perturbation_exits_nonzero() {
    let out = run(&["verify", "--suite", "minus", "--perturb-claim", "P3.5-3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_flags_exit_two() {
    let out = run(&["coh", "--space", "G", "--sym", "3"]); // missing --twist
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["coh", "--space", "X", "--sym", "0", "--twist", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["ext", "--collection", "unknown"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["stability", "--d", "1,x", "--theta", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file_and_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_g2bbw"))
        .args(["hilbert", "--a", "1", "--b", "0", "--output", "dims.json"])
        .env("G2BBW_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let body = std::fs::read_to_string(dir.path().join("dims.json")).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(doc["result"]["dim"], 14);
}

#[test]
fn ext_table_entries_are_exact_for_the_base_collection() {
    let out = run(&["ext", "--collection", "plus-base"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = doc["result"].as_array().unwrap();
    assert_eq!(rows.len(), 36);
    assert!(rows.iter().all(|r| r["exact"] == true));
}
