//! End-to-end tests of the command-line interface: frozen output formats,
//! JSON determinism, and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn ring_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("rings").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilsam"))
        .args(args)
        .output()
        .expect("spawn hilsam")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn coeffs_prints_the_depth1_line() {
    let path = ring_path("example_depth1.ring");
    let out = run(&["coeffs", path.to_str().unwrap(), "--nmax", "10"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "e = [1, 0, 3, 3], eta = 1\n");
}

#[test]
fn hilbert_prints_the_regular_table() {
    let path = ring_path("regular3.ring");
    let out = run(&["hilbert", path.to_str().unwrap(), "--nmax", "6"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "H = [0, 1, 4, 10, 20, 35, 56]\n");
}

#[test]
fn series_prints_the_closed_form() {
    let path = ring_path("y3ring.ring");
    let out = run(&["series", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("series = (1 + t + t^2)/(1 - t)"), "{text}");
    assert!(text.contains("numerator = [1, 1, 1]"), "{text}");
}

#[test]
fn gb_lists_the_lifted_basis() {
    let path = ring_path("regular3.ring");
    let out = run(&["gb", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "x\ny\nz\n");
}

#[test]
fn dseq_reports_sequence_verdicts_deterministically() {
    let path = ring_path("two_planes.ring");
    let args = ["dseq", path.to_str().unwrap(), "--seed", "7"];
    let first = run(&args);
    assert!(first.status.success());
    let text = stdout_of(&first);
    assert!(text.contains("regular: false"), "{text}");
    assert!(text.contains("d-sequence: true"), "{text}");
    assert!(text.contains("superficial search (k = 2, seed = 7): found"), "{text}");
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn corpus_builtin_json_is_byte_identical_and_clean() {
    let first = run(&["corpus", "builtin", "--json"]);
    assert!(first.status.success());
    let second = run(&["corpus", "builtin", "--json"]);
    assert_eq!(first.stdout, second.stdout);

    let report: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["failed"], 0);
    assert_eq!(report["errors"], 0);
    assert_eq!(report["instances"].as_array().unwrap().len(), 6);
    let names: Vec<&str> = report["instances"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["name"].as_str().unwrap())
        .collect();
    let mut sorted = names.clone();
    sorted.sort_unstable();
    assert_eq!(names, sorted, "instances must be name-ordered");
}

#[test]
fn check_emits_schema_versioned_json() {
    let path = ring_path("two_planes.ring");
    let out = run(&["check", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["name"], "two_planes");
    assert_eq!(report["e"], serde_json::json!([2, -1, 0]));
    let claims = report["claims"].as_array().unwrap();
    assert!(!claims.is_empty());
    assert!(claims.iter().all(|c| c["verdict"] != "failed"));
}

#[test]
fn field_override_is_accepted() {
    let path = ring_path("regular2.ring");
    let out = run(&["coeffs", path.to_str().unwrap(), "--field", "fp:32003"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "e = [1, 0, 0], eta = -2\n");

    let bad = run(&["coeffs", path.to_str().unwrap(), "--field", "fp:6"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let path = ring_path("d1ring.ring");
    let piped = run(&["coeffs", path.to_str().unwrap(), "--json"]);
    let filed = run(&[
        "coeffs",
        path.to_str().unwrap(),
        "--json",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(filed.status.success());
    assert!(filed.stdout.is_empty());
    let written = std::fs::read(&target).unwrap();
    assert_eq!(written, piped.stdout);
}

#[test]
fn input_errors_exit_2_and_window_errors_exit_3() {
    let missing = run(&["coeffs", "/no/such/file.ring"]);
    assert_eq!(missing.status.code(), Some(2));

    let path = ring_path("regular3.ring");
    let small = run(&["hilbert", path.to_str().unwrap(), "--nmax", "4"]);
    assert_eq!(small.status.code(), Some(2), "table below d+3 is an input error");

    let unfit = run(&["coeffs", path.to_str().unwrap(), "--nmax", "7"]);
    assert_eq!(
        unfit.status.code(),
        Some(3),
        "window too short to fit is a computation error"
    );
}

#[test]
fn corpus_with_a_broken_instance_exits_1_but_reports_the_rest() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mixed.corpus");
    std::fs::write(
        &path,
        "instance broken\nfield Q\nvars x y\nideal Q = x\n\n\
         instance fine\nfield Q\nvars x\nideal Q = x\nexpect d = 1\n",
    )
    .unwrap();
    let out = run(&["corpus", path.to_str().unwrap(), "--nmax", "6", "--Ncap", "20"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("instance broken"), "{text}");
    assert!(text.contains("error:"), "{text}");
    assert!(text.contains("instance fine"), "{text}");
    assert!(text.contains("1 errors"), "{text}");
}
