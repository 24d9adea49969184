use std::process::{Command, Output};

use serde_json::Value;

fn lemh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lemh"))
        .args(args)
        .output()
        .expect("spawn lemh")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("json on stderr")
}

fn num(v: &Value) -> f64 {
    v.as_str().expect("decimal string").parse().unwrap()
}

#[test]
fn measure_shifted_parabola() {
    let j = stdout_json(&lemh(&["measure", "-V", "z^2-2", "-r", "0.5", "-P", "z"]));
    assert!((num(&j["heights"]["mahler"]) - std::f64::consts::SQRT_2).abs() < 1e-9);
    assert_eq!(j["polynomial"], "z");
    assert_eq!(j["lemniscate"]["V"], "z^2-2");
}

#[test]
fn measure_lehmer_on_circle() {
    let j = stdout_json(&lemh(&[
        "measure",
        "-V",
        "z",
        "-r",
        "1",
        "-P",
        "z^10+z^9-z^7-z^6-z^5-z^4-z^3+z+1",
    ]));
    assert!((num(&j["heights"]["mahler"]) - 1.176280818).abs() < 1e-9);
}

#[test]
fn defaults_run() {
    for sub in ["measure", "norms", "classify"] {
        assert!(lemh(&[sub]).status.success(), "{sub}");
    }
}

#[test]
fn rational_radius_is_exact() {
    let a = stdout_json(&lemh(&["measure", "-V", "z^2-2", "-r", "1/2", "-P", "z"]));
    let b = stdout_json(&lemh(&["measure", "-V", "z^2-2", "-r", "0.5", "-P", "z"]));
    assert_eq!(a, b);
}

#[test]
fn trace_writes_two_components() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let j = stdout_json(&lemh(&[
        "trace",
        "-V",
        "z^2-1",
        "-r",
        "0.5",
        "-n",
        "256",
        "-o",
        path.to_str().unwrap(),
    ]));
    assert_eq!(j["components"], 2);
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("component_id,theta,re,im"));
    let ids: std::collections::BTreeSet<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ids.into_iter().collect::<Vec<_>>(), ["0", "1"]);
}

#[test]
fn norms_chain_holds() {
    let j = stdout_json(&lemh(&["norms", "-V", "z^2-1", "-r", "2", "-P", "z^3-z+1"]));
    assert_eq!(j["holds"], true);
}

#[test]
fn search_reports_unique_minimizer() {
    let j = stdout_json(&lemh(&[
        "search-min",
        "-V",
        "z^2-2",
        "-r",
        "1/2",
        "-k",
        "1",
        "-B",
        "2",
        "-p",
        "2",
    ]));
    assert_eq!(j["argmins"], serde_json::json!(["z^2-2"]));
    assert_eq!(j["case"], "i");
    assert!((num(&j["min_value"]) - 0.5).abs() < 1e-9);
}

#[test]
fn lehmer_lift_identity() {
    let j = stdout_json(&lemh(&["lehmer", "-V", "z^2-1", "-r", "1", "-Q", "z^3-z-1"]));
    assert!(num(&j["relative_gap"]) < 1e-10);
}

#[test]
fn alg_ints_emptiness() {
    let j = stdout_json(&lemh(&[
        "alg-ints",
        "-V",
        "z^2-2",
        "-r",
        "1/2",
        "--emptiness",
        "--max-degree",
        "2",
        "-B",
        "2",
    ]));
    assert_eq!(j["hits"], serde_json::json!([]));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "search-min",
        "-V",
        "z^2-z",
        "-r",
        "1",
        "-k",
        "1",
        "-B",
        "3",
        "-p",
        "inf",
    ];
    let a = lemh(&args);
    let b = lemh(&[
        "--threads",
        "1",
        args[0],
        args[1],
        args[2],
        args[3],
        args[4],
        args[5],
        args[6],
        args[7],
        args[8],
        args[9],
        args[10],
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let bad_poly = lemh(&["measure", "-P", "z^^2"]);
    assert_eq!(bad_poly.status.code(), Some(2));
    assert_eq!(stderr_json(&bad_poly)["code"], "parse");

    let zero = lemh(&["measure", "-P", "0"]);
    assert_eq!(zero.status.code(), Some(2));
    let e = stderr_json(&zero);
    assert_eq!(e["code"], "zero_polynomial");
    assert!(e["message"].is_string() && e["context"].is_object());

    let usage = lemh(&["frobnicate"]);
    assert_eq!(usage.status.code(), Some(2));
    assert_eq!(stderr_json(&usage)["code"], "usage");

    let hyp = lemh(&["classify", "-V", "z^2-1", "-r", "1", "-P", "2z+1"]);
    assert_eq!(hyp.status.code(), Some(3));
    assert_eq!(stderr_json(&hyp)["code"], "hypothesis_violation");

    let cap = lemh(&["search-min", "-k", "5", "-B", "50"]);
    assert_eq!(cap.status.code(), Some(4));
    assert_eq!(stderr_json(&cap)["code"], "resource_cap");

    let idx = lemh(&["classify", "-V", "z", "-r", "1", "-P", "z^2+z+1", "--max-index", "2"]);
    assert_eq!(idx.status.code(), Some(4));
    assert_eq!(stderr_json(&idx)["code"], "index_exhausted");
}

#[test]
fn progress_goes_to_stderr() {
    let out = lemh(&["--progress", "search-min", "-V", "z", "-r", "1", "-k", "2", "-B", "1"]);
    assert!(out.status.success());
    let lines: Vec<Value> = String::from_utf8_lossy(&out.stderr)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l["shard"].is_number()));
}
