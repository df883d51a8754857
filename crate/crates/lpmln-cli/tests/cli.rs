//! End-to-end tests of the `lpmln` binary: exact output text, JSON shape,
//! and the exit-code contract.

#![allow(clippy::excessive_precision)] // expected values written at full precision

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn lpmln(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpmln"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = lpmln(args);
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn models_lists_weights_and_probabilities() {
    let (code, stdout, _) = run(&["models", &path("f.lpmln")]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = stdout.lines().map(|l| l.split("  ").collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][..2], ["{}", "e^{5}"]);
    assert_eq!(rows[1][..2], ["{a}", "e^{3}"]);
    assert_eq!(rows[2][..2], ["{a, b}", "e^{5}"]);
    let p: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert!((p[0] - 0.46831053083348118).abs() < 1e-12);
    assert!((p[1] - 0.063378938333037621).abs() < 1e-12);
    assert!((p[2] - 0.46831053083348118).abs() < 1e-12);
}

#[test]
fn models_of_the_empty_program() {
    let (code, stdout, _) = run(&["models", &path("empty.lpmln")]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "{}  e^{0}  1");
}

#[test]
fn models_with_a_hard_fact() {
    let (code, stdout, _) = run(&["models", &path("hard_a.lpmln")]);
    assert_eq!(code, 0);
    assert!(stdout.contains("{a}  e^{0+1a}  1"), "stdout: {stdout}");
}

#[test]
fn parse_errors_exit_2() {
    let (code, _, stderr) = run(&["models", &path("bad.lpmln")]);
    assert_eq!(code, 2);
    assert!(stderr.contains("parse error"), "stderr: {stderr}");
}

#[test]
fn oversized_signatures_exit_3() {
    let (code, _, stderr) = run(&["models", &path("big.lpmln")]);
    assert_eq!(code, 3);
    assert!(stderr.contains("signature too large"), "stderr: {stderr}");
}

#[test]
fn check_se_reports_the_uniform_factor() {
    let (code, stdout, _) = run(&["check-se", &path("f.lpmln"), &path("g.lpmln")]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "equivalent, c = e^{2}");
}

#[test]
fn check_se_reports_reduct_mismatch() {
    let (code, stdout, _) = run(&["check-se", &path("f_prime.lpmln"), &path("g.lpmln")]);
    assert_eq!(code, 1);
    assert_eq!(
        stdout.trim(),
        "not equivalent: reducts differ at {a, b} (distinguished by {})"
    );
}

#[test]
fn check_se_reports_weight_mismatch() {
    let (code, stdout, _) = run(&["check-se", &path("f.lpmln"), &path("g_prime.lpmln")]);
    assert_eq!(code, 1);
    assert_eq!(
        stdout.trim(),
        "not equivalent: weight ratio is e^{1} at {} but e^{2} at {a}"
    );
}

#[test]
fn check_se_json_round_trips() {
    let (code, stdout, _) = run(&["check-se", &path("f.lpmln"), &path("g.lpmln"), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid json");
    assert_eq!(v["verdict"], "equivalent");
    assert_eq!(v["witness"]["c1"], 2.0);
    assert_eq!(v["witness"]["c2"], 0);

    let (code, stdout, _) = run(&[
        "check-se",
        &path("f_prime.lpmln"),
        &path("g.lpmln"),
        "--json",
    ]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid json");
    assert_eq!(v["verdict"], "not_equivalent");
    assert_eq!(v["counterexample"]["kind"], "reduct");
    assert_eq!(v["counterexample"]["x"], serde_json::json!(["a", "b"]));
    assert_eq!(v["counterexample"]["distinguishing"], serde_json::json!([]));
}

#[test]
fn single_conditions_run_standalone() {
    let (code, stdout, _) = run(&[
        "check-se",
        &path("f.lpmln"),
        &path("g.lpmln"),
        "--method",
        "b",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("condition b holds"), "stdout: {stdout}");

    let (code, stdout, _) = run(&[
        "check-se",
        &path("p1.lpmln"),
        &path("p2.lpmln"),
        "--method",
        "d",
    ]);
    assert_eq!(code, 1);
    assert!(stdout.contains("condition d fails"), "stdout: {stdout}");
    assert!(stdout.contains("candidate definition"), "stdout: {stdout}");
}

#[test]
fn the_falsifier_separates_and_clears() {
    let (code, stdout, _) = run(&[
        "check-se",
        &path("f_prime.lpmln"),
        &path("g.lpmln"),
        "--method",
        "falsify",
        "--trials",
        "500",
        "--seed",
        "0",
    ]);
    assert_eq!(code, 1);
    assert!(stdout.contains("violation found"), "stdout: {stdout}");

    let (code, stdout, _) = run(&[
        "check-se",
        &path("f.lpmln"),
        &path("g.lpmln"),
        "--method",
        "falsify",
        "--trials",
        "100",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("no violation"), "stdout: {stdout}");
}

#[test]
fn cross_check_agrees_on_both_verdicts() {
    let (code, stdout, _) = run(&["cross-check", &path("f.lpmln"), &path("g.lpmln")]);
    assert_eq!(code, 0);
    assert!(stdout.contains("all conditions agree"), "stdout: {stdout}");
    for id in ["b", "c", "d", "e", "f", "g"] {
        assert!(
            stdout.contains(&format!("condition {id} holds")),
            "missing condition {id} in: {stdout}"
        );
    }

    let (code, stdout, _) = run(&["cross-check", &path("p1.lpmln"), &path("p2.lpmln")]);
    assert_eq!(code, 1);
    for id in ["b", "c", "d", "e", "f", "g"] {
        assert!(
            stdout.contains(&format!("condition {id} fails")),
            "missing condition {id} in: {stdout}"
        );
    }

    let (code, stdout, _) = run(&["cross-check", &path("f.lpmln"), &path("f.lpmln")]);
    assert_eq!(code, 0);
    assert!(stdout.contains("all conditions agree"), "stdout: {stdout}");
}

#[test]
fn reduct_prints_satisfied_rules_and_reducts() {
    let (code, stdout, _) = run(&["reduct", &path("f.lpmln"), "--interp", "a"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("3: a <- not not a."), "stdout: {stdout}");
    assert!(stdout.contains("not bot -> a"), "stdout: {stdout}");
    assert!(!stdout.contains("2: b <- a."), "stdout: {stdout}");

    let (code, _, _) = run(&["reduct", &path("f.lpmln"), "--interp", ""]);
    assert_eq!(code, 0);

    let (code, _, stderr) = run(&["reduct", &path("f.lpmln"), "--interp", "a,zzz"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown atom"), "stderr: {stderr}");
}

#[test]
fn delta_prints_doubled_vocabulary_translations() {
    let (code, stdout, _) = run(&["delta", &path("imp.lpmln")]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "(a_prime -> b_prime) & (a -> b)");

    let (code, stdout, _) = run(&["delta", &path("nota.lpmln")]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "not a");
}

#[test]
fn choice_prints_excluded_middle() {
    let (code, stdout, _) = run(&["choice", &path("fact_a.lpmln")]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "a | not a");
}

#[test]
fn prob_prints_the_distribution() {
    let (code, stdout, _) = run(&["prob", &path("f.lpmln")]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = stdout.lines().map(|l| l.split("  ").collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][0], "{}");
    assert_eq!(rows[1][0], "{a}");
    assert_eq!(rows[2][0], "{a, b}");
    let sum: f64 = rows.iter().map(|r| r[1].parse::<f64>().unwrap()).sum();
    assert!((sum - 1.0).abs() < 1e-9);

    let (code, stdout, _) = run(&["prob", &path("f.lpmln"), "--interp", "b"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "0");
}
