//! End-to-end tests driving the compiled binary.

use std::process::{Command, Output};

use serde_json::Value;

fn flatspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatspec"))
        .args(args)
        .output()
        .expect("the binary should run")
}

/// Runs with --format json and parses stdout.
fn json(args: &[&str]) -> (Value, Output) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = flatspec(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout should be JSON ({e}); stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (v, out)
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn count_reports_the_reference_quadratic() {
    let (v, out) = json(&["count", "--anf", "02,13,23", "--n", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(v["results"][0]["flat_count"], 44);
    assert_eq!(v["results"][0]["assignments_total"], 81);
    assert_eq!(v["results"][0]["method"], "rank");
}

#[test]
fn count_falls_back_to_spectral_above_degree_two() {
    let (v, out) = json(&["count", "--anf", "012", "--n", "3"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("falling back"));
    assert_eq!(v["results"][0]["method"], "spectral");
    assert_eq!(v["results"][0]["flat_count"], 4);
}

#[test]
fn count_detail_lists_each_flat_assignment() {
    let (v, out) = json(&[
        "count", "--anf", "01", "--n", "2", "--set", "hn", "--detail",
    ]);
    assert_eq!(code(&out), 0);
    let rows = v["results"].as_array().unwrap();
    let total = rows[0]["flat_count"].as_u64().unwrap();
    assert_eq!(rows.len() as u64, 1 + total);
    assert!(rows[1..]
        .iter()
        .all(|r| r["assignment"].as_str().unwrap().len() == 2));
}

#[test]
fn verify_accepts_the_line_family_under_hn() {
    let (v, out) = json(&["verify", "--family", "line", "--set", "hn", "--n", "1..10"]);
    assert_eq!(code(&out), 0);
    assert_eq!(v["results"].as_array().unwrap().len(), 10);
    assert!(v["mismatches"].as_array().unwrap().is_empty());
    assert_eq!(v["results"][3]["expected"], 11);
    assert_eq!(v["results"][3]["source"], "formula");
}

#[test]
fn verify_walks_the_clc_grid() {
    let (v, out) = json(&[
        "verify", "--family", "clc", "--n", "2..3", "--m", "2..3",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(v["results"].as_array().unwrap().len(), 4);
    assert!(v["mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn distance_matches_the_reference_code() {
    let (v, out) = json(&["distance", "--anf", "01,02,13,24,34", "--n", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(v["results"][0]["distance"], 3);
}

#[test]
fn construct_builds_the_smallest_clc() {
    let (v, out) = json(&["construct", "--family", "clc", "--n", "2", "--m", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(v["results"][0]["anf"], "01,12,23");
    assert_eq!(v["results"][0]["vars"], 4);
    assert_eq!(v["results"][0]["degree"], 2);
}

#[test]
fn search_finds_the_quadratic_maximum_at_four_variables() {
    let (v, out) = json(&["search", "--n", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(v["results"][0]["max_count"], 44);
    assert_eq!(v["results"][0]["maximizer_total"], 33);
    assert_eq!(v["results"][0]["orbits"], 3);
    assert_eq!(v["results"][0]["listed_all"], true);
}

#[test]
fn orbit_lists_the_path_closure() {
    let (v, out) = json(&["orbit", "--anf", "01,12", "--n", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(v["results"][0]["orbit_size"], 4);
    let members: Vec<&str> = v["results"].as_array().unwrap()[1..]
        .iter()
        .map(|r| r["anf"].as_str().unwrap())
        .collect();
    assert!(members.contains(&"01,02,12"));
}

#[test]
fn interlace_evaluates_q_and_big_q() {
    let (v, out) = json(&["interlace", "--anf", "01,12,23", "--n", "4", "--at", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(v["results"][0]["q_at_1"], 5);
    assert_eq!(v["results"][0]["big_q_at_2"], 44);
    assert_eq!(v["results"][1]["q_at"], 33);
    assert_eq!(v["results"][1]["note"], "extrapolated definition");
}

#[test]
fn tables_pass_with_the_erratum_flagged() {
    let (v, out) = json(&["tables", "--table", "i"]);
    assert_eq!(code(&out), 0);
    let mismatches = v["mismatches"].as_array().unwrap();
    assert!(!mismatches.is_empty());
    assert!(mismatches
        .iter()
        .all(|r| r["note"] == "known erratum" && r["column"] == "constant"));
}

#[test]
fn strict_tables_fail_on_the_erratum() {
    let out = flatspec(&["tables", "--table", "i", "--strict"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn table_output_is_deterministic() {
    let a = flatspec(&["tables", "--table", "v", "--format", "json"]);
    let b = flatspec(&["tables", "--table", "v", "--format", "json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let path = std::env::temp_dir().join(format!("flatspec-out-{}.json", std::process::id()));
    let path_str = path.to_str().unwrap();
    let out = flatspec(&[
        "count", "--anf", "01", "--n", "2", "--format", "json", "--out", path_str,
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let body: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(body["results"][0]["flat_count"], 6);
    std::fs::remove_file(&path).ok();
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["count", "--n", "3"] as &[&str],
        &["count", "--anf", "01", "--family", "line", "--n", "2"],
        &["construct", "--family", "clc", "--n", "2"],
        &["count", "--anf", "01", "--n", "2", "--set", "xyz"],
        &["verify", "--family", "line", "--n", "2", "--m", "3"],
        &["verify", "--family", "line", "--n", "5..2"],
        &["search", "--n", "8"],
        &["count", "--anf", "09", "--n", "4"],
    ] {
        let out = flatspec(args);
        assert_eq!(code(&out), 2, "args {args:?} should be a usage error");
        assert!(out.stdout.is_empty(), "usage errors keep stdout clean");
    }
}

#[test]
fn csv_format_emits_one_header() {
    let out = flatspec(&["verify", "--family", "clique", "--n", "1..4", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "family,set,n,m,expected,measured,source,match"
    );
    assert_eq!(lines.count(), 4);
}
