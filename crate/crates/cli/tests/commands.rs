use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn e8cm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_e8cm")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn json_out(args: &[&str]) -> Value {
    let out = e8cm(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn is_e8cm_witness() {
    let v = json_out(&["is-e8cm", "--s-star", "0,0,1,0,0,0,0,0", "--sigma", ""]);
    assert_eq!(v["e8_changemaker"], json!(true));
    assert_eq!(v["tau"]["norm"], json!(14));
    let v = json_out(&["is-e8cm", "--s-star", "0,0,0,0,0,0,0,0", "--sigma", ""]);
    assert_eq!(v["e8_changemaker"], json!(false));
}

#[test]
fn recognize_from_file() {
    let v = json_out(&["recognize", "--gram", &data("lambda_27_16.json")]);
    assert_eq!(v, json!({ "summands": [[27, 16]] }));
}

#[test]
fn complement_of_the_27_witness() {
    let v = json_out(&["complement", "--tau", &data("tau_27.json")]);
    assert_eq!(v["rank"], json!(7));
    assert_eq!(v["discriminant"], json!(54));
    assert_eq!(v["summands"], json!([[27, 16], [2, 1]]));
}

#[test]
fn congruence_and_changemaker() {
    assert_eq!(json_out(&["congruence", "--p", "7", "--rhs", "4"]), json!({ "solutions": [2, 5] }));
    assert_eq!(json_out(&["is-changemaker", "--sigma", "1,1,3"]), json!({ "changemaker": true }));
    assert_eq!(json_out(&["is-changemaker", "--sigma", "1,3"]), json!({ "changemaker": false }));
}

#[test]
fn roots_listing() {
    let v = json_out(&["roots"]);
    assert_eq!(v["count"], json!(240));
    let positive = v["positive"].as_array().unwrap();
    assert_eq!(positive.len(), 120);
    assert_eq!(positive[119]["height"], json!(29));
}

#[test]
fn enumerate_streams_json_lines() {
    let out = e8cm(&["enumerate", "--n", "-1", "--limit", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 5);
    assert!(lines.iter().all(|l| l["sigma"] == json!([])));

    let all = e8cm(&["enumerate", "--n", "-1"]);
    assert_eq!(String::from_utf8(all.stdout).unwrap().lines().count(), 1003);

    let jobs = e8cm(&["enumerate", "--n", "1", "--sigma", "1,2", "--jobs", "3"]);
    let single = e8cm(&["enumerate", "--n", "1", "--sigma", "1,2"]);
    assert_eq!(jobs.stdout, single.stdout);
    assert!(!single.stdout.is_empty());
}

#[test]
fn enumerate_reports_skipped_tails() {
    let out = e8cm(&["enumerate", "--n", "1", "--norm-cap", "3", "--limit", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("skipped tail [1, 2]"));
}

#[test]
fn knot_invariants_of_the_7_witness() {
    let v = json_out(&["knot", "--s-star", "0,0,1,0,0,0,0,0", "--sigma", ""]);
    assert_eq!(v["p"], json!(14));
    assert_eq!(v["genus"], json!(7));
    assert_eq!(v["torsion"].as_array().unwrap().last(), Some(&json!(0)));
}

#[test]
fn family_member() {
    let v = json_out(&["family", "--name", "A1-", "--j", "2", "--verify"]);
    assert_eq!(v["p"], json!(43));
    assert_eq!(v["pass"], json!(true));
    // Λ(43, 28) ≅ Λ(43, 20) since 20·28 ≡ 1 (mod 43); summands carry the smaller q.
    assert_eq!(v["q"], json!(28));
    assert_eq!(v["complement"], json!([[43, 20]]));
}

#[test]
fn basis_outputs() {
    let v = json_out(&["basis", "--s-star", "0,1,0,0,0,0,0,0", "--sigma", "1,1,3"]);
    assert_eq!(v["pass"], json!(true));
    assert_eq!(v["v"].as_array().unwrap().len(), 2);
    assert_eq!(v["w"].as_array().unwrap().len(), 8);
    let v = json_out(&["basis", "--tau", &data("tau_27.json")]);
    assert_eq!(v["standard_basis"], Value::Null);
    assert_eq!(v["complement_basis"].as_array().unwrap().len(), 7);
}

#[test]
fn verify_single_claim() {
    let v = json_out(&["verify", "congruences"]);
    assert_eq!(v["claim"], json!("congruences"));
    assert_eq!(v["pass"], json!(true));
    assert_eq!(v["expected"]["provenance"], json!("PAPER"));
    assert!(v["millis"].is_u64());
}

#[test]
fn exit_codes() {
    assert_eq!(e8cm(&["verify", "no_such_claim"]).status.code(), Some(2));
    assert_eq!(e8cm(&["is-e8cm", "--s-star", "1,2", "--sigma", ""]).status.code(), Some(2));
    assert_eq!(e8cm(&["recognize", "--gram", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(e8cm(&["bogus"]).status.code(), Some(2));
    // The stepwise basis recipe fails on this vector, which is a failed
    // verification rather than a usage error.
    assert_eq!(e8cm(&["basis", "--s-star", "0,0,0,5,0,0,0,1", "--sigma", "1,1,1"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["complement", "--s-star", "1,1,1,1,0,0,0,0", "--sigma", "1"];
    assert_eq!(e8cm(&args).stdout, e8cm(&args).stdout);
}
