//! Black-box tests of the `normform` binary: exit codes, output formats,
//! and determinism across thread counts.

use std::process::{Command, Output};

fn normform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normform"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn bounds_returns_the_derived_caps() {
    let out = normform(&["bounds"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["m_max"], 225676);
    assert_eq!(doc["t_max_coarse"], 2942);
    assert_eq!(doc["t_max"], 352);
    assert_eq!(doc["schema_version"], 1);
}

#[test]
fn bounds_assume_paper_flag_matches_derivation() {
    let derived = normform(&["bounds"]);
    let assumed = normform(&["bounds", "--assume-paper-bounds"]);
    assert_eq!(derived.stdout, assumed.stdout);
}

#[test]
fn check_pair_reports_admissibility() {
    let out = normform(&["check-pair", "--t", "2", "--m", "20"]);
    assert!(out.status.success(), "exit 0 even when inadmissible");
    let doc = stdout_json(&out);
    assert_eq!(doc["admissibility"]["admissible"], false);
    assert_eq!(doc["admissibility"]["passes_hammer"], false);
    assert_eq!(doc["admissibility"]["k"], "27");
}

#[test]
fn check_pair_eliminates_with_explicit_prime() {
    let out = normform(&["check-pair", "--t", "2", "--m", "5", "--primes", "101"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["elimination"]["status"], "eliminated");
    assert_eq!(doc["elimination"]["witness_prime"], 101);
}

#[test]
fn usage_errors_exit_2() {
    let out = normform(&["check-pair", "--t", "2"]);
    assert_eq!(out.status.code(), Some(2), "missing --m is a usage error");
    let out = normform(&["verify", "--m-max", "2", "--t-max", "5"]);
    assert_eq!(out.status.code(), Some(2), "m_max < 3 violates a precondition");
    let out = normform(&["bounds", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2), "csv is only defined for the sieve table");
}

#[test]
fn sieve_csv_round_trips() {
    let out = normform(&["sieve", "--t-max", "5", "--m-max", "1000", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,count"));
    let parsed: Vec<(u64, u64)> = lines
        .map(|l| {
            let (t, c) = l.split_once(',').expect("two fields");
            (t.parse().unwrap(), c.parse().unwrap())
        })
        .collect();
    // must agree with the library enumeration
    let table = normform::enumerate_candidates(2, 5, 1000).unwrap();
    let expected: Vec<(u64, u64)> = table.rows.iter().map(|r| (r.t, r.count)).collect();
    assert_eq!(parsed, expected);
}

#[test]
fn sieve_json_lists_pairs_sorted() {
    let out = normform(&["sieve", "--t-max", "8", "--m-max", "2000"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    let pairs = doc["pairs"].as_array().unwrap();
    let listed: Vec<(u64, u64)> = pairs
        .iter()
        .map(|p| (p["t"].as_u64().unwrap(), p["m"].as_u64().unwrap()))
        .collect();
    let mut sorted = listed.clone();
    sorted.sort();
    assert_eq!(listed, sorted, "pairs must be emitted in (t, m) order");
}

#[test]
fn oracle_finds_the_two_functional_solutions() {
    let out = normform(&["oracle", "--t", "3", "--bound", "100"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["matches_functional"], true);
    let sols = doc["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 2);
    assert_eq!(sols[0]["x"], 9);
    assert_eq!(sols[0]["y"], -3);
    assert_eq!(sols[1]["y"], 6);
}

#[test]
fn oracle_naive_agrees_with_fast() {
    let fast = normform(&["oracle", "--t", "2", "--bound", "60"]);
    let naive = normform(&["oracle", "--t", "2", "--bound", "60", "--naive"]);
    assert_eq!(fast.stdout, naive.stdout);
}

#[test]
fn oracle_rejects_undersized_window() {
    let out = normform(&["oracle", "--t", "2", "--bound", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ziegler_verifies() {
    let out = normform(&["ziegler"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["verified"], true);
    let out = normform(&["ziegler", "--points", "27"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_scale_is_verified() {
    let out = normform(&["verify", "--t-max", "20", "--m-max", "20000"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["verdict"], "verified");
    assert_eq!(doc["schema_version"], 1);
}

#[test]
fn verify_runs_are_byte_identical_across_thread_counts() {
    let a = normform(&["verify", "--t-max", "30", "--m-max", "30000", "--threads", "1"]);
    let b = normform(&["verify", "--t-max", "30", "--m-max", "30000", "--threads", "4"]);
    let c = normform(&["verify", "--t-max", "30", "--m-max", "30000", "--threads", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(b.stdout, c.stdout);
}

#[test]
fn output_file_receives_the_report() {
    let dir = std::env::temp_dir().join(format!("normform-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = normform(&["sieve", "--t-max", "4", "--m-max", "500", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["schema_version"], 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
