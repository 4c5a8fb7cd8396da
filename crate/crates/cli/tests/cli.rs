//! End-to-end CLI behavior: exit codes, format contracts, and the documented
//! command examples.

use std::path::Path;
use std::process::{Command, Output};

fn covrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covrad"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn lower_headline_value() {
    let out = covrad(&["lower", "--n", "3", "--tau", "4", "--m", "10", "--ell", "-0.97"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("worst-case bound: 0.72475"),
        "unexpected output:\n{text}"
    );
}

#[test]
fn lower_boundary_ell_gives_fl_only() {
    let out = covrad(&["lower", "--n", "3", "--tau", "4", "--m", "10", "--ell", "-1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("0.689897"));
    assert!(!text.contains("worst-case"), "boundary ell must skip refinement:\n{text}");
}

#[test]
fn lower_assume_flag_reports_table1_value() {
    let out = covrad(&[
        "lower",
        "--n",
        "4",
        "--tau",
        "6",
        "--m",
        "31",
        "--ell",
        "-0.9",
        "--assume-ell-le-t1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0.771819"));
}

#[test]
fn lower_rejects_cardinality_below_floor() {
    let out = covrad(&["lower", "--n", "3", "--tau", "4", "--m", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lower_rejects_bad_ell() {
    let out = covrad(&["lower", "--n", "3", "--tau", "4", "--m", "10", "--ell", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn upper_examples() {
    let out = covrad(&["upper", "--n", "3", "--tau", "4", "--m", "10"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0.7545"));

    let out = covrad(&["upper", "--n", "3", "--tau", "3", "--m", "8", "--antipodal"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0.6667"));

    let out = covrad(&["upper", "--n", "3", "--tau", "5", "--m", "12", "--antipodal"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0.7947"));
}

#[test]
fn table1_csv_header_contract() {
    let out = covrad(&["table", "1", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,cardinality,strength,ell,fl_bound,new_bound"));
    assert_eq!(text.lines().count(), 19, "header plus 18 rows");
    assert!(text.contains("3,10,4,-0.97,0.689897,0.694892"));
}

#[test]
fn table1_diff_is_clean() {
    let out = covrad(&["table", "1", "--diff"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("18 rows, 0 failures"));
}

#[test]
fn quadrature_json_schema() {
    let out = covrad(&["quadrature", "--n", "3", "--k", "2", "--ell", "-0.9", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["k"], 2);
    assert_eq!(v["ell"], -0.9);
    assert_eq!(v["valid_strict"], false);
    let weights = v["weights"].as_array().unwrap();
    assert_eq!(weights.len(), 3);
    assert!(weights.iter().all(|w| w.as_f64().unwrap() > 0.0));
    assert_eq!(v["nodes"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_fixture_pass_and_fail() {
    let path = fixture("cross4.txt");
    let out = covrad(&["verify", "--file", &path, "--tau", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("pass"));

    let out = covrad(&["verify", "--file", &path, "--tau", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("fail"));
    assert!(stdout(&out).contains("worst residual"));
}

#[test]
fn verify_missing_file_is_invalid_input() {
    let out = covrad(&["verify", "--file", "/nonexistent.txt", "--tau", "3"]);
    assert_eq!(out.status.code(), Some(2));
}
