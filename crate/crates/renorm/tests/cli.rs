//! End-to-end tests of the `renorm` binary: flags, formats, exit codes,
//! and the golden coproduct traces.

use std::path::PathBuf;
use std::process::{Command, Output};

fn renorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_renorm"))
        .args(args)
        .env_remove("RENORM_ALPHABET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn temp_alphabet(content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("renorm-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("alpha-{}.json", content.len()));
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn parse_canonicalizes_and_measures() {
    let out = renorm(&["parse", "((x2)(x1)x1)"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("canonical: ((x1)(x2)x1)"));
    assert!(text.contains("length: 3"));
    assert!(text.contains("depth: 2"));
}

#[test]
fn parse_reports_column_and_exits_2() {
    let out = renorm(&["parse", "((x1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("unbalanced bracket at column 4"), "got: {err}");
    // caret under column 4
    assert!(err.contains("\n  ((x1\n     ^"), "got: {err}");
}

#[test]
fn strict_alphabet_rejects_unknown_letters_with_position() {
    let path = temp_alphabet(r#"{"letters":[{"name":"x1"}]}"#);
    let out = renorm(&["--alphabet", path.to_str().unwrap(), "parse", "(y)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("`y` at column 2"));
}

#[test]
fn alphabet_from_environment() {
    let path = temp_alphabet(r#"{"letters":[{"name":"q","loops":3}]}"#);
    let out = Command::new(env!("CARGO_BIN_EXE_renorm"))
        .args(["parse", "(q)"])
        .env("RENORM_ALPHABET", &path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("loops: 3"));
}

#[test]
fn parse_dot_output() {
    let out = renorm(&["parse", "--format", "dot", "((x1)x2)"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("digraph word {"));
    assert!(text.contains("n0 -> n1;"));
}

#[test]
fn delta_prints_the_three_term_coproduct() {
    let out = renorm(&["delta", "((xi)xj)"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("R[((xi)xj)] (x) e"));
    assert!(text.contains("e (x) ((xi)xj)"));
    assert!(text.contains("R[(xi)] (x) (xj)"));
}

#[test]
fn antipode_of_the_disjoint_triple() {
    let out = renorm(&["antipode", "((xi)(xj)xk)"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("- R[((xi)(xj)xk)]") || text.starts_with("-R[R[(xi)]R[(xj)](xk)]"));
    assert!(text.contains("R[R[(xi)]((xj)xk)]"));
    assert!(text.contains("R[R[(xj)]((xi)xk)]"));
    assert!(text.contains("R[R[(xi)]R[(xj)](xk)]"));
}

#[test]
fn z_of_a_letter() {
    let out = renorm(&["z", "(x)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "-R[(x)]");
}

#[test]
fn z_rejects_reducible_words() {
    let out = renorm(&["z", "(x)(y)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn renorm_alias_prints_four_terms() {
    let out = renorm(&["renorm", "((xi)xj)"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("((xi)xj)"));
    assert!(text.contains("R[R[(xi)](xj)]"));
}

#[test]
fn eval_renormalized_is_finite() {
    let out = renorm(&[
        "eval",
        "--model",
        "iterated",
        "--scheme",
        "momentum",
        "--renormalized",
        "((x1)x1)",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("finite: true"));
    assert!(text.contains("eps^0: 1/2*L^2"));
}

#[test]
fn eval_bare_letter_has_a_pole() {
    let out = renorm(&["eval", "(x1)"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("eps^-1: 1"));
    assert!(text.contains("finite: false"));
}

#[test]
fn eval_exact_and_window_flags() {
    let out = renorm(&["eval", "--window", "-1:2", "--exact", "(x1)"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("exact: "));
    // a window that cannot certify the poles is a model-domain error
    let out = renorm(&["eval", "--window", "-1:2", "((x1)x1)"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("cannot certify"));
}

#[test]
fn eval_oracle_comparison_appended() {
    let out = renorm(&[
        "eval",
        "--oracle",
        "eps=0.1,c=2",
        "(x1)",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["schema"], "renorm/1");
    assert!(v["oracle"]["withinTolerance"].as_bool().unwrap());
}

#[test]
fn eval_linear_letter_in_iterated_model_exits_3() {
    let path = temp_alphabet(r#"{"letters":[{"name":"J1","degree":1}]}"#);
    let out = renorm(&[
        "--alphabet",
        path.to_str().unwrap(),
        "eval",
        "--model",
        "iterated",
        "(J1)",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("iterated model rejects"));
}

#[test]
fn enumerate_counts_and_note() {
    let out = renorm(&["enumerate", "--length", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("count: 4"));
    let out = renorm(&["enumerate", "--length", "7", "--count-only"]);
    let text = stdout(&out);
    assert!(text.contains("count: 48"));
    assert!(text.contains("51"));
}

#[test]
fn check_suites_exit_codes() {
    let out = renorm(&["check", "--suite", "antipode-forest", "--max-length", "4"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let out = renorm(&[
        "check",
        "--suite",
        "coassoc",
        "--scheme",
        "ms",
        "--max-length",
        "3",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("witness"));
}

#[test]
fn failing_check_exits_1_with_machine_readable_report() {
    // at max length 1 there are no condition pairs, so the MS
    // expect-violation suite finds no witness and fails
    let out = renorm(&[
        "check",
        "--suite",
        "coassoc",
        "--scheme",
        "ms",
        "--max-length",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let json_line = text.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(json_line).unwrap();
    assert_eq!(v["pass"], false);
}

#[test]
fn check_json_report_is_machine_readable() {
    let out = renorm(&["check", "--suite", "overlap", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["schema"], "renorm/1");
    assert_eq!(v["pass"], true);
    assert!(v["checks"].as_array().unwrap().len() >= 5);
}

#[test]
fn golden_coproduct_traces() {
    for (word, golden) in [
        ("((xi)xj)", include_str!("golden/delta_ex1.json")),
        ("((xi)(xj)xk)", include_str!("golden/delta_ex2.json")),
        ("(((xi)xj)xk)", include_str!("golden/delta_ex3.json")),
    ] {
        let out = renorm(&["delta", "--trace", "--format", "json", word]);
        assert!(out.status.success());
        assert_eq!(stdout(&out), golden, "trace drifted for {word}");
    }
}
