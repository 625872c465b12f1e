use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn synchro(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_synchro"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = synchro(&all);
    assert!(out.status.code().is_some_and(|c| c == 0 || c == 2), "{out:?}");
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn check_cerny_four_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "c4.dfa", "# Cerny C_4\n4 2\n1 2 3 0\n1 1 2 3\n");
    let out = synchro(&["check", &file]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("shortest reset word: baaabaaab (length 9)"), "{text}");
    let doc = json(&["check", &file]);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["result"]["reset_length"], 9);
    assert_eq!(doc["result"]["bound_status"], "within-bound");
}

#[test]
fn generated_cerny_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c5.dfa");
    let file = file.to_str().unwrap();
    let out = synchro(&["gen", "cerny", "--n", "5", "-o", file]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(file).unwrap(), "5 2\n1 2 3 4 0\n1 1 2 3 4\n");
    assert_eq!(json(&["check", file])["result"]["reset_length"], 16);
}

#[test]
fn random_generation_is_seeded() {
    let a = stdout(&synchro(&["gen", "random", "--n", "6", "--k", "3", "--seed", "9"]));
    let b = stdout(&synchro(&["gen", "random", "--n", "6", "--k", "3", "--seed", "9"]));
    assert_eq!(a, b);
    assert!(a.starts_with("6 3\n"));
}

#[test]
fn enumeration_of_three_states() {
    let doc = json(&["enum", "--n", "3", "--k", "2", "--filter", "sync"]);
    let r = &doc["result"];
    assert_eq!(r["tables"], 729);
    assert_eq!(r["max_length"], 4);
    assert_eq!(r["exceeding"], 0);
    assert_eq!(r["visited"], r["synchronizing"]);
}

#[test]
fn enumeration_respects_budget() {
    let out = synchro(&["enum", "--n", "4", "--k", "2", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("65536"));
}

#[test]
fn json_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "c4.dfa", "4 2\n1 2 3 0\n1 1 2 3\n");
    for args in [
        vec!["probe", file.as_str()],
        vec!["trace", file.as_str()],
        vec!["lemmas", "--cases", "200", "--samples", "20", "--seed", "3"],
    ] {
        let mut with_json = args.clone();
        with_json.push("--json");
        let a = synchro(&with_json);
        let b = synchro(&with_json);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn probe_reports_cerny_four() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "c4.dfa", "4 2\n1 2 3 0\n1 1 2 3\n");
    let doc = json(&["probe", &file]);
    let r = &doc["result"];
    assert_eq!(r["reset_length"], 9);
    assert_eq!(r["q"], 1);
    assert_eq!(r["solutions_verified"], true);
    assert_eq!(r["independence_rank"], r["independence_expected"]);
    let out = synchro(&["probe", &file, "--q", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn matrix_of_a_word() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "c4.dfa", "4 2\n1 2 3 0\n1 1 2 3\n");
    let doc = json(&["matrix", &file, "--word", "ba", "--q", "1"]);
    assert_eq!(doc["result"]["targets"], serde_json::json!([2, 2, 3, 0]));
    assert_eq!(doc["result"]["rank"], 3);
    assert_eq!(doc["result"]["column_q_nonzero"], false);
    let dot = stdout(&synchro(&["matrix", &file, "--dot"]));
    assert!(dot.starts_with("digraph"), "{dot}");
    assert_eq!(synchro(&["matrix", &file, "--word", "bz"]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.dfa", "3 2\n1 2 0\n1 1 7\n");
    let out = synchro(&["check", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
    assert_eq!(synchro(&["check"]).status.code(), Some(1));
    assert_eq!(synchro(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(synchro(&["--help"]).status.code(), Some(0));
}

#[test]
fn non_synchronizing_check_completes() {
    let dir = tempfile::tempdir().unwrap();
    let perm = write(dir.path(), "perm.dfa", "3 1\n1 2 0\n");
    let doc = json(&["check", &perm]);
    assert_eq!(doc["result"]["synchronizing"], false);
    assert_eq!(doc["result"]["bound_status"], "not-synchronizing");
    assert_eq!(synchro(&["trace", &perm]).status.code(), Some(1));
}

#[test]
fn sequential_jobs_match_parallel() {
    let seq = synchro(&["enum", "--n", "3", "--k", "2", "--jobs", "1", "--json"]);
    let par = synchro(&["enum", "--n", "3", "--k", "2", "--jobs", "2", "--json"]);
    assert_eq!(seq.stdout, par.stdout);
}
