use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqquant")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn decompose_rows_and_total() {
    let v = json(&["decompose", "--family", "sp", "--n", "2", "--k", "2"]);
    assert_eq!(v["rows"][0]["diagram"], "4");
    assert_eq!(v["rows"][0]["dimension"], 5);
    assert_eq!(v["rows"][1]["diagram"], "2,2");
    assert_eq!(v["rows"][1]["dimension"], 1);
    assert_eq!(v["total"], 6);
    let v = json(&["decompose", "--family", "o", "--n", "4", "--k", "2"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert_eq!(v["rows"][0]["dimension"], 20);
    assert_eq!(v["rows"][1]["diagram"], "1,1,1,1");
    assert_eq!(v["total"], 21);
    let v = json(&["decompose", "--family", "o", "--n", "3", "--k", "0"]);
    assert_eq!(v["rows"], serde_json::json!([{"diagram": "", "dimension": 1}]));
}

#[test]
fn eigenvalues_at_a_shift_and_symbolic() {
    let v = json(&["eigenvalue", "--family", "o", "--n", "6", "--diagram", "6,4", "--delta", "0"]);
    assert_eq!(v["value"], "36/5");
    let v = json(&["eigenvalue", "--family", "sp", "--n", "5", "--diagram", "6,2,2,2", "--delta", "0"]);
    assert_eq!(v["value"], "6");
    let v = json(&["eigenvalue", "--family", "sp", "--n", "3", "--diagram", "", "--delta", "symbolic"]);
    assert_eq!(v["coefficients"], serde_json::json!({"c2": "3", "c1": "-3", "c0": "0"}));
    let out = run(&["eigenvalue", "--family", "sp", "--n", "3", "--diagram", "3", "--delta", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn critical_values() {
    let v = json(&["critical", "--family", "sp", "--n", "2", "--kmax", "1"]);
    assert_eq!(v["witnesses"], serde_json::json!([{"delta": "1", "upper": "2@1", "lower": "@0"}]));
    for fam in ["o", "sp"] {
        let small = json(&["critical", "--family", fam, "--n", "3", "--kmax", "1"]);
        let big = json(&["critical", "--family", fam, "--n", "3", "--kmax", "2"]);
        let big_values = big["values"].as_array().unwrap();
        assert!(!big_values.contains(&Value::from("0")));
        for x in small["values"].as_array().unwrap() {
            assert!(big_values.contains(x));
        }
    }
}

#[test]
fn quantize_and_refuse() {
    let v = json(&["quantize", "--family", "sp", "--n", "2", "--lambda", "1/2", "--mu", "1/2", "--K", "2", "--M", "2"]);
    assert_eq!(v["equivariance"]["violations"], 0);
    assert_eq!(v["unipotent"], true);
    let out = run(&["quantize", "--family", "sp", "--n", "2", "--lambda", "0", "--mu", "1", "--K", "1", "--M", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["witnesses"][0]["upper"], "2@1");
    assert_eq!(v["witnesses"][0]["lower"], "@0");
    let v = json(&["quantize", "--family", "o", "--n", "2", "--lambda", "1/3", "--mu", "-1/4", "--K", "0", "--M", "1"]);
    let dim = v["basis"].as_array().unwrap().len();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), dim);
    assert!(entries.iter().all(|e| e["row"] == e["col"] && e["value"] == "1"));
}

#[test]
fn tree_levels() {
    let v = json(&["tree", "--family", "o", "--n", "4", "--diagram", "2,2", "--k", "2"]);
    assert_eq!(v["levels"][1]["diagrams"], serde_json::json!(["1,1"]));
    assert!(v["levels"].as_array().unwrap().iter().all(|l| l["strictly_dominated"] == true));
    let v = json(&["tree", "--family", "sp", "--n", "2", "--diagram", "", "--k", "0"]);
    assert_eq!(v["levels"].as_array().unwrap().len(), 1);
    let v = json(&["tree", "--family", "sp", "--n", "2", "--diagram", "2", "--k", "1", "--lambda", "1/3", "--mu", "1/2"]);
    assert_eq!(v["levels"][1]["gamma"], serde_json::json!([""]));
    let out = run(&["tree", "--family", "o", "--n", "4", "--diagram", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_spectrum() {
    let v = json(&["verify", "--family", "o", "--n", "2", "--delta", "1/2", "--K", "2", "--M", "1"]);
    assert_eq!(v["ok"], true);
}

#[test]
fn output_is_deterministic() {
    let args = ["critical", "--family", "o", "--n", "4", "--kmax", "3", "--format", "csv"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("delta,upper,lower\n"));
}

#[test]
fn bad_arguments_exit_with_two() {
    assert_eq!(run(&["decompose", "--family", "o", "--n", "1", "--k", "1"]).status.code(), Some(2));
    assert_eq!(run(&["decompose", "--family", "x", "--n", "2", "--k", "1"]).status.code(), Some(2));
    assert_eq!(run(&["quantize", "--family", "o", "--n", "2", "--lambda", "1/0", "--mu", "0", "--K", "1", "--M", "1"]).status.code(), Some(2));
    assert_eq!(run(&["critical", "--family", "o", "--n", "2", "--kmax", "0"]).status.code(), Some(2));
}
