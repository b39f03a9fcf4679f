//! End-to-end runs of the `qspec` binary against golden output.
//!
//! Set `QSPEC_BLESS=1` to rewrite the golden files from the current output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn manifest_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn data(name: &str) -> String {
    manifest_dir()
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn qspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qspec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 output")
}

fn golden(name: &str, args: &[&str], code: i32) {
    let out = qspec(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{args:?}\nstderr: {}",
        stderr(&out)
    );
    let path: PathBuf = manifest_dir()
        .join("tests/golden")
        .join(format!("{name}.out"));
    let actual = stdout(&out);
    if std::env::var_os("QSPEC_BLESS").is_some() {
        fs::write(&path, &actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

#[test]
fn q1_of_k4() {
    golden("q1_k4", &["q1", "--graph6", "C~"], 0);
    golden("q1_k4", &["q1", "--edges", &data("k4.edges")], 0);
}

#[test]
fn threshold_table() {
    golden("threshold_6", &["threshold", "--n", "6"], 0);
    golden("threshold_10", &["threshold", "--n", "10"], 0);
}

#[test]
fn rn_values() {
    golden("rn_10", &["rn", "--n", "10"], 0);
    golden("rn_8_closed_form", &["rn", "--n", "8", "--closed-form"], 0);
}

#[test]
fn check_records() {
    golden("check_k4", &["check", "--graph6", "C~"], 0);
    golden("check_k3e5", &["check", "--graph6", "G~zfF?"], 0);
    golden("check_h6", &["check", "--graph6", "E~a?"], 0);
}

#[test]
fn verify_exhaustive() {
    golden("verify_exhaustive_4", &["verify", "--exhaustive", "4"], 0);
    golden("verify_exhaustive_6", &["verify", "--exhaustive", "6"], 0);
    golden(
        "verify_exhaustive_6",
        &["verify", "--exhaustive", "6", "--jobs", "4", "--stable"],
        0,
    );
}

#[test]
fn verify_stream_and_jsonl() {
    let dir = std::env::temp_dir().join(format!("qspec-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let out = dir.join("mixed.jsonl");
    let out_s = out.display().to_string();
    golden(
        "verify_stream",
        &[
            "verify",
            "--graph6-file",
            &data("mixed.g6"),
            "--out",
            &out_s,
        ],
        0,
    );
    let lines: Vec<String> = fs::read_to_string(&out)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(lines.len(), 3);
    let records: Vec<serde_json::Value> = lines
        .iter()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let keys: Vec<&str> = records[0]
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(
        keys,
        [
            "graph6",
            "n",
            "edges",
            "q1",
            "q1_threshold",
            "edge_threshold",
            "has_pm",
            "verdict",
            "witness"
        ]
    );
    assert_eq!(records[0]["graph6"], "C~");
    assert!((records[0]["q1"].as_f64().unwrap() - 6.0).abs() < 1e-9);
    assert_eq!(records[0]["verdict"], "conclusion-holds");
    assert!(records[0]["witness"].is_null());
    assert_eq!(records[1]["verdict"], "boundary");
    assert_eq!(records[1]["witness"], serde_json::json!([0, 1, 2]));
    assert_eq!(records[2]["verdict"], "hypothesis-not-met");
    assert_eq!(records[2]["witness"], serde_json::json!([0]));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_random_is_seeded() {
    let args = [
        "verify", "--random", "10", "--p", "0.8", "--count", "200", "--seed", "7",
    ];
    golden("verify_random", &args, 0);
    let parallel = qspec(&[&args[..], &["--jobs", "3"]].concat());
    assert_eq!(stdout(&parallel), stdout(&qspec(&args)));
}

#[test]
fn extremal_reports() {
    golden("extremal_10", &["extremal", "--n", "10"], 0);
    golden("extremal_6", &["extremal", "--n", "6"], 0);
    golden(
        "extremal_8_graph6",
        &["extremal", "--n", "8", "--emit-graph6"],
        0,
    );
    golden("extremal_6_h", &["extremal", "--n", "6", "--which", "h"], 0);
}

#[test]
fn proof_check() {
    golden(
        "proof_instance",
        &["proof-check", "--instance", "2,3,1,1,1"],
        0,
    );
    golden("proof_all", &["proof-check", "--all"], 0);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["q1"],
        &["q1", "--graph6", "C~", "--bogus"],
        &["q1", "--graph6", "C~", "--edges", "x"],
        &["verify"],
        &["verify", "--random", "10"],
        &["extremal", "--n", "6", "--which", "k9"],
    ] {
        let out = qspec(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(
            stderr(&out).starts_with("error:"),
            "{args:?}: {}",
            stderr(&out)
        );
    }
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["q1", "--graph6", "~~"][..],
        &["q1", "--edges", "/nonexistent/graph.edges"],
        &["check", "--edges", &data("disconnected.edges")],
        &["check", "--graph6", "DQc"],
        &["threshold", "--n", "7"],
        &["rn", "--n", "2"],
        &["verify", "--exhaustive", "5"],
        &[
            "verify", "--random", "10", "--p", "1.5", "--count", "3", "--seed", "1",
        ],
        &["extremal", "--n", "8", "--which", "k2e4"],
        &["proof-check", "--instance", "1,2,1,1"],
    ] {
        let out = qspec(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(
            stderr(&out).starts_with("error: "),
            "{args:?}: {}",
            stderr(&out)
        );
    }
}
