//! End-to-end tests against the compiled binary: output shapes, exit
//! codes and byte determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_excedance"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn count_text_output() {
    let out = run(&["count", "--r", "3", "--n", "3", "--word", "bbb|bab|ba"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "word: bbb|bab|ba\nrealizable: true\nmethod: inclusion-exclusion\ncount: 4\n"
    );
}

#[test]
fn count_json_output() {
    let out = run(&[
        "count", "--r", "3", "--n", "3", "--word", "bbb|bab|ba", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["r"], 3);
    assert_eq!(value["n"], 3);
    assert_eq!(value["word"], "bbb|bab|ba");
    assert_eq!(value["realizable"], true);
    assert_eq!(value["count"], "4"); // counts are strings, never numbers
    assert_eq!(value["method"], "inclusion-exclusion");
}

#[test]
fn count_of_identity_word() {
    let out = run(&["count", "--r", "2", "--n", "3", "--word", "aaaaa"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("count: 1\n"));
}

#[test]
fn count_non_realizable_word_is_zero() {
    let out = run(&[
        "count", "--r", "2", "--n", "3", "--word", "ababa", "--method", "ie",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("realizable: false"));
    assert!(text.contains("count: 0"));
}

#[test]
fn count_wrong_length_is_usage_error() {
    let out = run(&["count", "--r", "2", "--n", "3", "--word", "aaaa"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("expected a word of length 5"));
}

#[test]
fn count_oracle_method_agrees() {
    let out = run(&[
        "count", "--r", "3", "--n", "3", "--word", "bbb|bab|ba", "--method", "oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("method: oracle"));
    assert!(text.contains("count: 4"));
}

#[test]
fn pattern_count_worked_example() {
    let out = run(&["pattern-count", "--n", "9", "--pattern", "ab*aa*ba"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1776\n");
}

#[test]
fn pattern_count_trace_goes_to_stderr() {
    let out = run(&["pattern-count", "--n", "9", "--pattern", "ab*aa*ba", "--trace"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1776\n");
    let trace = stderr(&out);
    for needle in ["+5400", "-3456", "-384", "+216"] {
        assert!(trace.contains(needle), "missing {needle} in {trace}");
    }
}

#[test]
fn pattern_count_small_cases() {
    let out = run(&["pattern-count", "--n", "4", "--pattern", "baa"]);
    assert_eq!(stdout(&out), "7\n");
    let out = run(&["pattern-count", "--n", "3", "--pattern", "aa"]);
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn pattern_count_rejects_bad_patterns() {
    let out = run(&["pattern-count", "--n", "4", "--pattern", "ab"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["pattern-count", "--n", "4", "--pattern", "axb"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("position 2"));
}

#[test]
fn table_text_output() {
    let out = run(&["table", "--r", "2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "0 1\n1 4\n2 6\n3 6\n4 4\n5 1\nlog-concave: true\nunimodal: true\npalindromic: true\n"
    );
}

#[test]
fn table_r1_goes_through_inclusion_exclusion() {
    let out = run(&["table", "--r", "1", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("0 1\n1 7\n2 7\n3 1\n"));
}

#[test]
fn table_minimal_signature() {
    let out = run(&["table", "--r", "2", "--n", "1"]);
    assert!(stdout(&out).starts_with("0 1\n1 1\n"));
}

#[test]
fn table_json_counts_are_strings() {
    let out = run(&["table", "--r", "2", "--n", "3", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["counts"][0], "1");
    assert_eq!(value["counts"][2], "6");
    assert_eq!(value["log_concave"], true);
    assert_eq!(value["unimodal"], true);
    assert_eq!(value["palindromic"], true);
}

#[test]
fn enumerate_lists_matching_elements() {
    let out = run(&["enumerate", "--r", "3", "--n", "3", "--word", "bbb|bab|ba"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "2^0 1^1 3^2\n2^0 3^1 1^2\n3^0 1^1 2^2\n3^0 2^1 1^2\n"
    );
}

#[test]
fn enumerate_identity_word() {
    let out = run(&["enumerate", "--r", "2", "--n", "2", "--word", "aaa"]);
    assert_eq!(stdout(&out), "1^0 2^0\n");
}

#[test]
fn enumerate_non_realizable_word_prints_nothing() {
    let out = run(&["enumerate", "--r", "2", "--n", "3", "--word", "ababa"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "");
}

#[test]
fn enumerate_honors_limit() {
    let out = run(&[
        "enumerate", "--r", "3", "--n", "3", "--word", "bbb|bab|ba", "--limit", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "2^0 1^1 3^2\n2^0 3^1 1^2\n");
    assert!(stderr(&out).contains("truncated"));
}

#[test]
fn verify_passes_on_small_groups() {
    for (r, n) in [("2", "3"), ("1", "1"), ("3", "2")] {
        let out = run(&["verify", "--r", r, "--n", n, "--no-timestamp"]);
        assert_eq!(out.status.code(), Some(0), "r={r} n={n}: {}", stdout(&out));
        assert!(stdout(&out).ends_with("overall: pass\n"));
    }
}

#[test]
fn verify_single_suite() {
    let out = run(&["verify", "--r", "3", "--n", "3", "--what", "ie", "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "verify: r=3 n=3\nie: pass\noverall: pass\n");
}

#[test]
fn verify_json_output() {
    let out = run(&[
        "verify", "--r", "2", "--n", "2", "--format", "json", "--no-timestamp",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["overall"], "pass");
    assert_eq!(value["checks"][0]["name"], "closed-form");
    assert_eq!(value["checks"][0]["status"], "pass");
}

#[test]
fn verify_has_timestamp_by_default() {
    let out = run(&["verify", "--r", "2", "--n", "2"]);
    assert!(stdout(&out).contains("generated-at: "));
}

#[test]
fn output_is_byte_deterministic() {
    let args_list: Vec<Vec<&str>> = vec![
        vec!["count", "--r", "3", "--n", "3", "--word", "bbb|bab|ba", "--format", "json"],
        vec!["table", "--r", "3", "--n", "4", "--format", "json"],
        vec!["enumerate", "--r", "2", "--n", "3", "--word", "baaaa"],
        vec!["verify", "--r", "2", "--n", "3", "--no-timestamp"],
        vec!["verify", "--r", "2", "--n", "3", "--format", "json"],
    ];
    for args in args_list {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "nondeterministic: {args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn guard_refusals_exit_3() {
    let out = run(&[
        "count", "--r", "3", "--n", "3", "--word", "bbb|bab|ba", "--method", "oracle",
        "--max-enumeration", "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("enumeration cap"));

    let out = run(&[
        "pattern-count", "--n", "9", "--pattern", "bbbbbbbb", "--max-expansion", "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("2^8"));

    let out = run(&["verify", "--r", "2", "--n", "12"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["count", "--r", "0", "--n", "3", "--word", "aa"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["count", "--r", "2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2)); // clap: missing --word

    let out = run(&["count", "--r", "2", "--n", "3", "--word", "aaxaa"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("position 3"));
}
