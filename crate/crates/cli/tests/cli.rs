use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_localface"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn localh_of_figure1_file() {
    let out = run(&["example", "figure1"]);
    assert!(out.status.success());
    let path = scratch("fig1.json", &String::from_utf8(out.stdout).unwrap());
    let v = json(&["localh", "--in", path.to_str().unwrap()]);
    assert_eq!(v["local_h"], serde_json::json!([0, 1, 1, 0]));
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn localh_of_trivial_simplex_vanishes() {
    let v = json(&["localh", "--example", "trivial", "--d", "5"]);
    assert_eq!(v["local_h"], serde_json::json!([0, 0, 0, 0, 0, 0]));
}

#[test]
fn gamma2_strong_lefschetz_in_char_2() {
    let v = json(&["lefschetz", "--example", "gamma-t", "--t", "2", "--char", "2", "--mode", "strong", "--seed", "7"]);
    assert_eq!(v["field"], "GF(2^31)");
    assert_eq!(v["holds"], false);
    assert_eq!(v["failing_degrees"], serde_json::json!([2]));
    let s2 = &v["degrees"][2];
    assert_eq!(s2["rank"], 0);
    assert!(s2["witness"].is_array());
}

#[test]
fn output_is_byte_identical() {
    let args = ["lefschetz", "--example", "figure1", "--mode", "weak", "--char", "3", "--seed", "11"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["gram", "--example", "interior-point", "--d", "4", "--s", "1", "--w", "2", "--seed", "4"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn module_of_figure1() {
    let v = json(&["module", "--example", "figure1", "--char", "2"]);
    assert_eq!(v["hilbert"], serde_json::json!([0, 1, 1, 0]));
    assert_eq!(v["socle"][1], 1);
    assert_eq!(v["generators"], serde_json::json!([0, 1, 1, 0]));
}

#[test]
fn gram_with_isotropic_basis() {
    let v = json(&[
        "gram", "--example", "gamma-t", "--t", "2", "--s", "3", "--w", "0", "--basis", "w_1^2*w_2;w_1*w_2^2",
    ]);
    assert_eq!(v["nondegenerate"], true);
    assert_eq!(v["isotropic_basis_vectors"].as_array().unwrap().len(), 2);
}

#[test]
fn validate_and_classify() {
    let v = json(&["validate", "--example", "figure1"]);
    assert_eq!(v["valid"], true);
    let v = json(&["validate", "--example", "figure1-doctored", "--char", "2"]);
    assert_eq!(v["valid"], false);
    assert_eq!(v["homology"]["failures"][0], serde_json::json!([2, 3]));
    let v = json(&["classify", "--example", "figure1"]);
    assert_eq!(v["classification"]["vertex_induced"], false);
}

#[test]
fn relative_local_h() {
    let v = json(&["relative-localh", "--example", "interior-point", "--d", "3", "--face", "v1"]);
    assert_eq!(v["relative_local_h"], serde_json::json!([0, 1, 0]));
}

#[test]
fn kx_verify_corpus_and_custom_instance() {
    let v = json(&["kx-verify"]);
    assert_eq!(v["all_hold"], true);
    assert!(v["instances"].as_array().unwrap().len() >= 6);
    let path = scratch(
        "kx.json",
        r#"{"mode":"cor","h":[{"w":1}],"I":["v1","w","w"],"J":{"v1":1}}"#,
    );
    let v = json(&["kx-verify", "--example", "interior-point", "--d", "3", "--kx", path.to_str().unwrap()]);
    assert_eq!(v["instances"][0]["holds"], true);
}

#[test]
fn regular_check() {
    let good = scratch(
        "good.json",
        r#"{"coords":{"v1":["0","0"],"v2":["1","0"],"v3":["0","1"],"w":["1/3","1/3"]},
            "heights":{"v1":"0","v2":"0","v3":"0","w":"-1"}}"#,
    );
    let v = json(&["regular-check", "--example", "interior-point", "--d", "3", "--realization", good.to_str().unwrap()]);
    assert_eq!(v["regularity"]["regular"], true);
    let flat = scratch(
        "flat.json",
        r#"{"coords":{"v1":["0","0"],"v2":["1","0"],"v3":["0","1"],"w":["1/3","1/3"]},
            "heights":{"v1":"0","v2":"0","v3":"0","w":"0"}}"#,
    );
    let v = json(&["regular-check", "--example", "interior-point", "--d", "3", "--realization", flat.to_str().unwrap()]);
    assert_eq!(v["regularity"]["regular"], false);
}

#[test]
fn regress_single_criterion() {
    let v = json(&["regress", "--criterion", "9"]);
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["criteria"][0]["id"], 9);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["localh", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["localh"]).status.code(), Some(1));
    assert_eq!(run(&["localh", "--in", "/nonexistent.json"]).status.code(), Some(1));
    let bad = scratch("bad.json", "{\"d\": 2, \"vertices\": [");
    assert_eq!(run(&["localh", "--in", bad.to_str().unwrap()]).status.code(), Some(1));
    let out = run(&["kx-verify", "--example", "interior-point", "--d", "4", "--kx", "x.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size bound"));
    assert_eq!(run(&["regress", "--criterion", "11"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn text_format() {
    let out = run(&["localh", "--example", "figure1", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "local_h: [0,1,1,0]"));
}
