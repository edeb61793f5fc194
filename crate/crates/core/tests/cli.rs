//! End-to-end checks of the `bohrgap` binary: formats, exit codes, caps.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bohrgap(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bohrgap"));
    cmd.args(args).env_remove("BOHRGAP_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("{l:?} is not JSON: {e}")))
        .collect()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn rot90_file() -> PathBuf {
    let path = std::env::temp_dir().join(format!("bohrgap-rot90-{}.txt", std::process::id()));
    std::fs::write(&path, "gen a\n0 -1\n1 0\n").unwrap();
    path
}

#[test]
fn audit_is_deterministic_per_seed() {
    let rep = rot90_file();
    let rep = rep.to_str().unwrap();
    let args = ["audit", "--group", "z:1", "--rep", rep, "--samples", "200", "--seed", "7"];
    let a = bohrgap(&args, &[]);
    let b = bohrgap(&args, &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let rec = &records(&a)[0];
    assert_eq!(rec["samples"], 200);
    assert_eq!(rec["passed"], true);
    assert!((rec["bound"].as_f64().unwrap() - 8.0 / 9.0).abs() < 1e-12);
    assert!((rec["max_observed"].as_f64().unwrap() - 1.0 / 9.0).abs() < 1e-12);
}

#[test]
fn tsv_has_header_then_rows() {
    let out = bohrgap(&["--format", "tsv", "spectral", "--group", "z:1", "--radii", "2..4"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "radius\tball\testimate");
    assert_eq!(lines.len(), 4);
    for (line, r) in lines[1..].iter().zip(2..) {
        let cells: Vec<&str> = line.split('\t').collect();
        assert_eq!(cells.len(), 3);
        assert_eq!(cells[0], r.to_string());
        assert_eq!(cells[1], (2 * r + 1).to_string());
    }
}

#[test]
fn jsonl_records_parse() {
    let out = bohrgap(&["amenable", "--group", "free:2", "--radii", "2..5"], &[]);
    let recs = records(&out);
    assert_eq!(recs.len(), 5);
    assert!(recs[..4].iter().all(|r| r["estimate"].is_f64()));
}

#[test]
fn ergodic_exit_codes() {
    let out = bohrgap(&["ergodic", "--matrix", "2 1/1 1"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["verdict"], "Ergodic");
    let out = bohrgap(&["ergodic", "--matrix", "0 -1/1 0"], &[]);
    assert_eq!(out.status.code(), Some(1));
    let rec = &records(&out)[0];
    assert_eq!(rec["verdict"], "NotErgodic");
    assert_eq!(rec["k"], 4);
    assert_eq!(rec["orbit"], 4);
}

#[test]
fn errors_exit_two_with_name() {
    let out = bohrgap(&["ergodic", "--matrix", "1 x/0 1"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: ParseError:"), "{}", stderr(&out));
    let out = bohrgap(&["frobnicate"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: UsageError:"), "{}", stderr(&out));
    let out = bohrgap(&["--tol=-1", "spectral", "--group", "z:1"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: UsageError:"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn zconj_verdicts() {
    let out = bohrgap(&["zconj", "root:5:1", "root:5:3"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["conjugate"], true);
    let out = bohrgap(&["zconj", "root:5:1", "root:7:1"], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(records(&out)[0]["conjugate"], false);
}

#[test]
fn finite_group_reports_exact_spectrum() {
    let out = bohrgap(&["amenable", "--group", "perm:3:(0 1),(0 1 2)"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs[0]["order"], 6);
    assert!((recs[0]["top"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((recs[0]["second"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert_eq!(recs[1]["amenable"], true);
}

#[test]
fn inconclusive_exits_zero() {
    let out = bohrgap(&["amenable", "--group", "free:2", "--radii", "2..3"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let last = records(&out).pop().unwrap();
    assert_eq!(last["verdict"], "Inconclusive");
    assert_eq!(last["inconclusive"], true);
    assert!(last["amenable"].is_null());
}

#[test]
fn cap_flag_overrides_environment() {
    let args = ["spectral", "--group", "free:2", "--radii", "2..3"];
    let out = bohrgap(&args, &[("BOHRGAP_CAP", "3")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: BallTooLarge:"), "{}", stderr(&out));
    let mut with_flag = args.to_vec();
    with_flag.extend(["--cap", "100000"]);
    let out = bohrgap(&with_flag, &[("BOHRGAP_CAP", "3")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[1]["ball"], 53);
}

#[test]
fn duality_counts_match() {
    let out = bohrgap(&["duality", "--abelian", "5,5", "--action", "1 1/0 1"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &records(&out)[0];
    assert_eq!(rec["order"], 25);
    assert_eq!(rec["fixed_elements"], 5);
    assert_eq!(rec["fixed_characters"], 5);
}

#[test]
fn help_documents_exit_codes() {
    let out = bohrgap(&["--help"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Exit status"));
    assert!(text.contains("BOHRGAP_CAP"));
}
