//! End-to-end tests of the `mprod` binary: exit codes, report streams, and
//! file round trips, all against the shipped fixtures.

use mprod_cli::formats;
use mprod_core::tensor::{rel_residual, TransformMatrix};
use std::path::PathBuf;
use std::process::{Command, Output};

fn fix(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn mprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mprod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn compute_then_verify_its_own_output() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.json");
    let out = mprod(&[
        "compute", "--kind", "gd",
        "--input", &fix("gd_a.json"),
        "--m", &fix("m.json"),
        "--output", out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let summary = stdout(&out);
    assert!(summary.contains("index 1"), "summary: {summary}");

    let verify = mprod(&[
        "verify", "--kind", "gd",
        "--input", &fix("gd_a.json"),
        "--candidate", out_path.to_str().unwrap(),
        "--m", &fix("m.json"),
        "--tol", "1e-10",
    ]);
    assert_eq!(code(&verify), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&verify)).expect("JSON report");
    assert_eq!(report["pass"], serde_json::Value::Bool(true));
}

#[test]
fn saved_files_reload_and_resave_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("x1.json");
    let second = dir.path().join("x2.json");
    let out = mprod(&[
        "compute", "--kind", "drazin",
        "--input", &fix("gd_a.json"),
        "--m", &fix("m.json"),
        "--output", first.to_str().unwrap(),
        "--quiet",
    ]);
    assert_eq!(code(&out), 0);
    let t = formats::load_tensor(&first).unwrap();
    formats::save_tensor(&second, &t, Some("drazin inverse".into())).unwrap();
    assert_eq!(
        std::fs::read_to_string(&first).unwrap(),
        std::fs::read_to_string(&second).unwrap(),
        "parse → serialize must be the identity on produced files"
    );
}

#[test]
fn quiet_suppresses_the_summary_line() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.json");
    let out = mprod(&[
        "compute", "--kind", "gd",
        "--input", &fix("gd_a.json"),
        "--m", &fix("m.json"),
        "--output", out_path.to_str().unwrap(),
        "--quiet",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    assert!(out_path.exists());
}

#[test]
fn missing_input_file_is_exit_1() {
    let out = mprod(&["index", "--input", &fix("nope.json"), "--m", &fix("m.json")]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn malformed_json_is_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = mprod(&["index", "--input", bad.to_str().unwrap(), "--m", &fix("m.json")]);
    assert_eq!(code(&out), 1);
}

#[test]
fn transform_source_is_required_and_exclusive() {
    let none = mprod(&["index", "--input", &fix("gd_a.json")]);
    assert_eq!(code(&none), 1);
    let both = mprod(&[
        "index", "--input", &fix("gd_a.json"),
        "--m", &fix("m.json"),
        "--m-preset", "dft",
    ]);
    assert_eq!(code(&both), 1);
}

#[test]
fn transform_size_mismatch_is_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let shallow = dir.path().join("depth2.json");
    let t = formats::load_tensor(PathBuf::from(fix("gd_a.json")).as_path()).unwrap();
    let two = mprod_core::Tensor3::from_fn(3, 3, 2, |i, j, k| *t.slice(k).get((i, j)).unwrap());
    formats::save_tensor(&shallow, &two, None).unwrap();
    let out = mprod(&["index", "--input", shallow.to_str().unwrap(), "--m", &fix("m.json")]);
    assert_eq!(code(&out), 1);
}

#[test]
fn failed_verification_is_exit_2_with_report() {
    // a tensor is almost never its own Moore-Penrose inverse
    let out = mprod(&[
        "verify", "--kind", "mp",
        "--input", &fix("gd_a.json"),
        "--candidate", &fix("gd_a.json"),
        "--m", &fix("m.json"),
    ]);
    assert_eq!(code(&out), 2);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("JSON report");
    assert_eq!(report["pass"], serde_json::Value::Bool(false));
}

#[test]
fn law_conclusion_failure_is_exit_3() {
    // Self-pair: hypotheses hold to machine precision (≈1e-15), while the
    // conclusion's residuals sit near 1e-12. A tolerance between the two
    // makes the law applicable yet failing — the exit-3 contract.
    let out = mprod(&[
        "laws", "--check", "reverse-order", "--kind", "gd",
        "--a", &fix("gd_a.json"),
        "--b", &fix("gd_a.json"),
        "--m", &fix("m.json"),
        "--tol", "1e-13",
    ]);
    assert_eq!(code(&out), 3, "stdout: {}", stdout(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("JSON report");
    assert_eq!(report["applicable"], serde_json::Value::Bool(true));
    assert_eq!(report["conclusion"]["pass"], serde_json::Value::Bool(false));
}

#[test]
fn applicable_passing_law_is_exit_0() {
    let out = mprod(&[
        "laws", "--check", "reverse-order", "--kind", "gd",
        "--a", &fix("gd_a.json"),
        "--b", &fix("gd_a.json"),
        "--m", &fix("m.json"),
    ]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("JSON report");
    assert_eq!(report["applicable"], serde_json::Value::Bool(true));
    assert_eq!(report["conclusion"]["pass"], serde_json::Value::Bool(true));
}

#[test]
fn inapplicable_law_is_exit_0() {
    let out = mprod(&[
        "laws", "--check", "reverse-order", "--kind", "gdmp",
        "--a", &fix("gd_a.json"),
        "--b", &fix("gdmp_a.json"),
        "--m", &fix("m.json"),
    ]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("JSON report");
    assert_eq!(report["applicable"], serde_json::Value::Bool(false));
}

#[test]
fn index_prints_the_bare_number() {
    let out = mprod(&["index", "--input", &fix("gd_a.json"), "--m", &fix("m.json")]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn dft_preset_matches_an_explicit_dft_file() {
    let dir = tempfile::tempdir().unwrap();
    let dft_file = dir.path().join("dft.json");
    formats::save_matrix(&dft_file, TransformMatrix::dft(3).matrix(), None).unwrap();

    let out_preset = dir.path().join("preset.json");
    let out_file = dir.path().join("file.json");
    let a = mprod(&[
        "compute", "--kind", "mp",
        "--input", &fix("gd_a.json"),
        "--m-preset", "dft",
        "--output", out_preset.to_str().unwrap(),
        "--quiet",
    ]);
    let b = mprod(&[
        "compute", "--kind", "mp",
        "--input", &fix("gd_a.json"),
        "--m", dft_file.to_str().unwrap(),
        "--output", out_file.to_str().unwrap(),
        "--quiet",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(code(&b), 0);
    let x = formats::load_tensor(&out_preset).unwrap();
    let y = formats::load_tensor(&out_file).unwrap();
    assert!(rel_residual(&x, &y) <= 1e-12, "gap {}", rel_residual(&x, &y));
}

#[test]
fn solve_reports_residual_and_writes_solution() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.json");
    let out = mprod(&[
        "solve", "--kind", "gdstar",
        "--a", &fix("solve_a.json"),
        "--b", &fix("solve_b.json"),
        "--m", &fix("m.json"),
        "--output", out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("residual"));
    let x = formats::load_tensor(&out_path).unwrap();
    let expected = formats::load_tensor(PathBuf::from(fix("solve_x_expected.json")).as_path()).unwrap();
    assert!(rel_residual(&x, &expected) <= 1e-10);
}

#[test]
fn help_and_version_are_exit_0() {
    assert_eq!(code(&mprod(&["--help"])), 0);
    assert_eq!(code(&mprod(&["--version"])), 0);
    // unknown subcommand is a usage error
    assert_eq!(code(&mprod(&["frobnicate"])), 1);
}
