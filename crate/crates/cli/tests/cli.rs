//! Behavior tests against the installed binary: output formats, exit
//! codes, determinism, and flag handling.

use std::collections::BTreeMap;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_terncorr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn csv_header_and_full_rank_columns() {
    let out = run(&["spectrum", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "tau,x,y,mag2,rank_q1,rank_q2,eps1,eps2");
    assert_eq!(lines.len(), 81, "header plus one row per shift");
    assert_eq!(lines[1], "0,-10,0,100,2,4,-1,1");
    for row in &lines[1..] {
        assert_eq!(row.split(',').count(), 8);
        assert!(!row.ends_with(','), "rank columns must be filled: {row}");
    }
    // The confirmation summary goes to stderr, keeping stdout pure CSV.
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("confirmed by direct correlation"), "stderr: {err}");
}

#[test]
fn direct_path_leaves_rank_columns_empty() {
    let out = run(&["spectrum", "--k", "1", "--path", "direct"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.lines().nth(1).unwrap().ends_with(",,,,"), "{text}");
}

#[test]
fn json_document_shape() {
    let out = run(&["spectrum", "--k", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
    let meta = &v["meta"];
    assert_eq!(meta["command"], "spectrum");
    assert_eq!(meta["k"], 1);
    assert_eq!(meta["n"], 4);
    assert_eq!(meta["d"], 5);
    assert_eq!(meta["modulus"], "2,1,0,0,1");
    assert_eq!(meta["seed"], 0);
    assert_eq!(meta["bound"], 46);
    assert_eq!(meta["bound_squared"], 2116);
    let rows = v["rows"].as_array().expect("rows array");
    assert_eq!(rows.len(), 80);
    assert_eq!(rows[0]["tau"], 0);
    assert_eq!(rows[0]["x"], -10);
    assert_eq!(rows[0]["rank_q1"], 2);
    assert_eq!(rows[40]["tau"], 40);
}

#[test]
fn out_file_receives_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spectrum.csv");
    let out = run(&["spectrum", "--k", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("wrote 80 rows"));
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.starts_with("tau,x,y,mag2,"));
    assert_eq!(content.lines().count(), 81);
}

#[test]
fn sampled_runs_are_deterministic_per_seed() {
    let args = ["sample", "--k", "1", "--tau", "sample:20", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "same seed must give identical bytes");
    let c = run(&["sample", "--k", "1", "--tau", "sample:20", "--seed", "10"]);
    assert_ne!(a.stdout, c.stdout, "different seed must draw different shifts");
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(run(&["spectrum", "--k", "2"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--k", "1", "--tau", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        run(&["sample", "--k", "1", "--tau", "all"]).status.code(),
        Some(2),
        "sample requires a sampled tau selection"
    );
    assert_eq!(
        run(&["spectrum", "--k", "1", "--modulus", "1,1,1,1,1"]).status.code(),
        Some(2),
        "imprimitive modulus must be rejected"
    );
}

#[test]
fn over_budget_requests_exit_three() {
    let out = run(&["spectrum", "--k", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("refusing workload"), "stderr: {err}");
    // A budget squeeze on a small job refuses the same way.
    let out = run(&["spectrum", "--k", "1", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn alternative_modulus_gives_the_same_magnitude_multiset() {
    // x^4 + 2x^3 + 2 is the reciprocal of the default modulus; the spectrum
    // is permuted but its magnitude multiset is a field invariant.
    fn mag_multiset(csv: &str) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        for line in csv.lines().skip(1) {
            let mag = line.split(',').nth(3).unwrap().to_string();
            *m.entry(mag).or_default() += 1;
        }
        m
    }
    let default = run(&["spectrum", "--k", "1"]);
    let alt = run(&["spectrum", "--k", "1", "--modulus", "2,0,0,2,1"]);
    assert_eq!(alt.status.code(), Some(0));
    let d = mag_multiset(&stdout_of(&default));
    let a = mag_multiset(&stdout_of(&alt));
    assert_eq!(d, a);
    assert_eq!(d.get("289"), Some(&5), "frozen peak multiplicity");
}

#[test]
fn degree_twenty_sample_runs_without_direct_leg() {
    let out = run(&["sample", "--k", "5", "--tau", "sample:2", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 3);
    for row in text.lines().skip(1) {
        assert!(!row.ends_with(','), "engine columns expected: {row}");
        assert_eq!(row.split(',').nth(5).unwrap(), "20", "q2 rank is full");
    }
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("direct confirmation skipped"), "stderr: {err}");
}

#[test]
fn rank_dist_writes_frozen_classes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ranks.csv");
    let out = run(&["rank-dist", "--k", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let content = std::fs::read_to_string(&path).unwrap();
    let mut lines = content.lines();
    assert_eq!(lines.next().unwrap(), "rank_q1,rank_q2,eps1,eps2,count");
    let classes: Vec<&str> = lines.collect();
    assert_eq!(
        classes,
        vec![
            "2,4,-1,1,5",
            "2,4,1,1,5",
            "4,4,-1,-1,20",
            "4,4,-1,1,10",
            "4,4,1,-1,20",
            "4,4,1,1,20",
        ]
    );
}

#[test]
fn verify_lemmas_reports_and_formats() {
    let out = run(&["verify-lemmas", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("15 passed, 0 failed, 0 skipped"), "{text}");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "verify-lemmas", "--k", "1", "--format", "json", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["failed"], 0);
    assert_eq!(v["passed"], 15);
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"kernel-q1-radical"));
    assert!(names.contains(&"correlation-reconstruction"));

    let csv_refused = run(&[
        "verify-lemmas", "--k", "1", "--format", "csv", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(csv_refused.status.code(), Some(2));
}

#[test]
fn verify_bound_passes_on_family_decimation() {
    let out = run(&["verify-bound", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("PASS bound"), "{text}");
    assert!(text.contains("max |C_d(tau)|^2 = 289"), "{text}");
    assert!(text.contains("2 passed, 0 failed"), "{text}");
}
