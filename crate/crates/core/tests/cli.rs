use std::process::Command;

use serde_json::Value;

fn sidon(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sidon")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out) = sidon(args);
    (code, serde_json::from_str(&out).unwrap_or(Value::Null))
}

#[test]
fn construct_then_verify_reports_sidon() {
    let (code, v) = json(&["construct", "--name", "spence", "--q", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["sidon"], true);
    assert_eq!(v["elements"].as_array().unwrap().len(), 4);

    let (code, v) = json(&["verify", "--group", "13", "--set", "0,1,3,9"]);
    assert_eq!(code, 0);
    assert_eq!(v["sidon"], true);
    assert_eq!(v["perfect_difference_set"], true);

    let (code, v) = json(&["verify", "--group", "10", "--set", "0,1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["sidon"], false);
    assert!(v["witness"].is_array());
}

#[test]
fn planes_and_orders() {
    let (code, v) = json(&["planes", "--q", "3", "--family", "i"]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = json(&["orders", "--n", "21"]);
    assert_eq!(code, 0);
    assert!(!v["matches"].as_array().unwrap().is_empty());
}

#[test]
fn search_sigma_and_budget() {
    let (code, v) = json(&["search", "--group", "13"]);
    assert_eq!(code, 0);
    assert_eq!(v["sigma"], 4);
    let (code, _) = sidon(&["search", "--group", "40", "--budget", "2"]);
    assert_eq!(code, 3);
}

#[test]
fn bad_input_exits_with_precondition_code() {
    assert_eq!(sidon(&["construct", "--name", "singer", "--q", "6"]).0, 2);
    assert_eq!(sidon(&["construct", "--name", "erdos_turan", "--q", "4"]).0, 2);
    assert_eq!(sidon(&["no-such-command"]).0, 2);
}

#[test]
fn sparse_output_is_wrapped() {
    let (code, v) = json(&["sparse", "--construction", "A", "--param", "30"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["construction"], "A");
    assert_eq!(v["result"]["sidon"], true);
    assert!(v["float_note"].is_string());
}
