//! End-to-end runs of the `starshape` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starshape")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let code = out.status.code().expect("exit code");
    let value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)));
    (value, code)
}

#[test]
fn classify_extended_dynkin() {
    let (v, code) = json(&["classify", "--branches", "1,1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["kind"], "ExtendedDynkin");
    assert_eq!(v["results"]["name"], "~D4");
    assert_eq!(v["results"]["t"], "1");
    for key in ["command", "graph", "class", "results", "status", "tool_version"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn classify_dynkin_and_hyperbolic() {
    let (v, _) = json(&["classify", "--branches", "1,2,4"]);
    assert_eq!(v["results"]["name"], "E8");
    assert_eq!(v["graph"], serde_json::json!([4, 2, 1]));
    let (v, code) = json(&["classify", "--branches", "1,2,6", "--precision", "1e-12"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["kind"], "Hyperbolic");
    let lo: f64 = v["results"]["t2"]["lo"].as_str().unwrap().parse().unwrap();
    let hi: f64 = v["results"]["t2"]["hi"].as_str().unwrap().parse().unwrap();
    assert!(lo < 1.1762808182599 && 1.1762808182599 < hi && hi - lo < 2e-12);
}

#[test]
fn verify_suites_pass() {
    for (branches, which) in [
        ("2,2,3", "gamma"),
        ("1,1,1,1", "ts-eigen"),
        ("1,3,4", "prop5"),
        ("1,1,1,1,1", "limits"),
        ("3,3,1", "sigma"),
        ("4,4,4", "eq5"),
        ("1,1,1,2", "rho"),
    ] {
        let (v, code) = json(&["verify", "--branches", branches, "--which", which, "--max-j", "10"]);
        assert_eq!(code, 0, "{branches} {which}: {v}");
        assert_eq!(v["status"], "pass");
    }
}

#[test]
fn certify_all_minimal() {
    let (v, code) = json(&["certify", "--all-minimal"]);
    assert_eq!(code, 0);
    let certs = v["results"]["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 5);
    for c in certs {
        assert_eq!(c["irreducible"], true);
        assert_eq!(c["one_in_span"], false);
    }
    assert_eq!(certs[0]["basis_dimension"], 2);
}

#[test]
fn certify_extended_dynkin_is_reported() {
    let (v, code) = json(&["certify", "--branches", "1,1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "reported");
    assert_eq!(v["results"]["certificates"][0]["one_in_span"], true);
}

#[test]
fn hypothesis_sweep() {
    let (v, code) = json(&["hypothesis", "--max-branches", "5", "--max-k", "4"]);
    assert_eq!(code, 0);
    assert!(v["results"]["max_residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["results"]["counterexamples"], serde_json::json!([]));
}

#[test]
fn orbit_converges_and_swaps() {
    let (v, code) = json(&["orbit", "--branches", "1,1,1,1,1", "--start", "odd", "--steps", "40", "--t-choice", "t2"]);
    assert_eq!(code, 0);
    let steps = v["results"]["steps"].as_array().unwrap();
    assert_eq!(steps[0]["odd"], 1.0);
    assert_eq!(steps[0]["even"], 0.0);
    assert_eq!(steps[40]["target_even"], 1.0);
    assert!(v["results"]["final_distance"].as_f64().unwrap() < 1e-6);

    let (v, _) = json(&["orbit", "--branches", "1,1,1,1,1", "--start", "odd", "--steps", "40", "--t-choice", "t1"]);
    let steps = v["results"]["steps"].as_array().unwrap();
    let t1 = (3.0 - 5f64.sqrt()) / 2.0;
    assert!((steps[40]["target_even"].as_f64().unwrap() - t1).abs() < 1e-12);
    assert!(v["results"]["final_distance"].as_f64().unwrap() < 1e-6);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["classify", "--branches", "1,x"][..],
        &["classify", "--branches", "0,1"],
        &["classify", "--branches", "1,1,1,1", "--precision", "abc"],
        &["verify", "--branches", "2,1", "--which", "gamma"],
        &["verify", "--branches", "1,1,1,1", "--which", "limits"],
        &["hypothesis", "--max-branches", "2", "--max-k", "3"],
        &["orbit", "--branches", "2,2,2", "--start", "odd", "--steps", "3"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn table_format() {
    let out = run(&["classify", "--branches", "2,2,2", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("results.name") && l.ends_with("~E6")));
}

#[test]
fn output_is_deterministic() {
    for args in [&["certify", "--all-minimal"][..], &["hypothesis", "--max-branches", "4", "--max-k", "3"]] {
        let a = run(args).stdout;
        let b = run(args).stdout;
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn failed_check_exits_1() {
    // a non-minimal graph is checked numerically; 1e-30 is out of reach
    let (v, code) = json(&["verify", "--branches", "5,5,5", "--which", "eq5", "--precision", "1e-30"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
}
