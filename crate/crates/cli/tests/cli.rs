//! End-to-end tests of the `ghilb` binary: argument handling, report shape,
//! exit codes and byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ghilb"))
}

fn fixture(name: &str, contents: &str) -> PathBuf {
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).expect("write fixture");
    path
}

const COMMUTING_PAIR: &str = r#"{
  "field": "Q",
  "a": [["0","0","0"],["1","0","0"],["0","1","0"]],
  "b": [["0","0","0"],["2","0","0"],["3","2","0"]]
}"#;

const NONCOMMUTING_PAIR: &str = r#"{
  "field": "Q",
  "a": [["0","1","0"],["0","0","0"],["0","0","0"]],
  "b": [["0","0","0"],["0","0","1"],["1","0","0"]]
}"#;

const ZERO_PAIR: &str = r#"{
  "field": "Q",
  "a": [["0","0","0"],["0","0","0"],["0","0","0"]],
  "b": [["0","0","0"],["0","0","0"],["0","0","0"]]
}"#;

#[test]
fn construct_emits_slice_and_charpoly() {
    let out = bin()
        .args(["construct", "--spec", "B2", "--slice", "t2=1,t4=2"])
        .output()
        .expect("run binary");
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(report["suite"], "construct");
    let checks = report["checks"].as_array().expect("checks array");
    let ids: Vec<&str> = checks.iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["slice-matrix", "slice-charpoly"]);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    let rows = checks[0]["witness"]["rows"].as_array().expect("matrix rows");
    assert_eq!(rows.len(), 5, "B2 acts on a 5-dimensional space");
}

#[test]
fn classify_rejects_a_noncommuting_pair() {
    let pair = fixture("noncommuting.json", NONCOMMUTING_PAIR);
    let out = bin()
        .args(["classify", "--spec", "A2", "--pair"])
        .arg(&pair)
        .output()
        .expect("run binary");
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("commute"), "stderr: {stderr}");
}

#[test]
fn classify_flags_pairs_outside_the_scheme() {
    let pair = fixture("zero.json", ZERO_PAIR);
    let out = bin()
        .args(["classify", "--spec", "A2", "--pair"])
        .arg(&pair)
        .output()
        .expect("run binary");
    assert_eq!(out.status.code(), Some(1), "oversized centralizer fails the membership check");
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    let membership = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "in-hilb")
        .expect("membership record");
    assert_eq!(membership["status"], "fail");
}

#[test]
fn reports_are_deterministic_for_a_fixed_seed() {
    let pair = fixture("commuting.json", COMMUTING_PAIR);
    let run = || {
        let out = bin()
            .args(["classify", "--spec", "A2", "--seed", "11", "--trials", "6", "--pair"])
            .arg(&pair)
            .output()
            .expect("run binary");
        assert!(out.status.success());
        let mut report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        report["elapsed_ms"] = serde_json::Value::from(0);
        report
    };
    assert_eq!(run(), run());
}

#[test]
fn text_format_writes_to_out_file() {
    let pair = fixture("commuting2.json", COMMUTING_PAIR);
    let out_path = Path::new(env!("CARGO_TARGET_TMPDIR")).join("mu2.txt");
    let out = bin()
        .args(["mu2", "--spec", "A2", "--format", "text"])
        .arg("--pair")
        .arg(&pair)
        .arg("--out")
        .arg(&out_path)
        .output()
        .expect("run binary");
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "--out suppresses stdout");
    let text = std::fs::read_to_string(&out_path).expect("report file");
    assert!(text.contains("[ pass  ] mu2  -- 2"), "report: {text}");
    assert!(text.contains("1 checks, 0 failed"), "report: {text}");
}

#[test]
fn gcx_verify_accepts_shape_and_seeds_aliases() {
    let out = bin()
        .args(["gcx", "verify", "--shape", "A2", "--degree", "2", "--seeds", "1"])
        .output()
        .expect("run binary");
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let ids: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"coisotropy"));
    assert!(ids.contains(&"reduction-lemma"));
}

#[test]
fn haiman_rejects_a_size_mismatch() {
    let pts = fixture(
        "three_points.json",
        r#"{ "field": "Q", "rows": [["0","0"],["1","0"],["0","1"]] }"#,
    );
    let out = bin()
        .args(["haiman", "--diagram", "2x2", "--points"])
        .arg(&pts)
        .output()
        .expect("run binary");
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("4"), "stderr should name the expected count: {stderr}");
}

#[test]
fn unknown_flags_exit_with_a_usage_error() {
    let out = bin()
        .args(["construct", "--spec", "A2", "--bogus"])
        .output()
        .expect("run binary");
    assert_eq!(out.status.code(), Some(2));
}
