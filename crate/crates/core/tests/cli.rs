use std::process::{Command, Output};

use serde_json::{json, Value};

fn symdiag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symdiag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_out(args: &[&str]) -> (i32, Value) {
    let out = symdiag(args);
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text:?}"));
    (out.status.code().unwrap(), value)
}

#[test]
fn synth_exit_codes() {
    let (code, v) = json_out(&["--json", "synth", "[0,1,1,1]", "--k-hint", "2"]);
    assert_eq!(code, 0);
    assert_eq!((v["k"].clone(), v["R"].clone()), (json!(3), json!([[2, 3], [3, 2]])));

    let (code, v) = json_out(&["--json", "synth", "[0,0,0,0,0,0,0,4]", "--k-hint", "3"]);
    assert_eq!(code, 2);
    assert_eq!(v["witness"], json!([1, 1, 1]));

    let (code, v) = json_out(&["--json", "synth", "[0,0]"]);
    assert_eq!(code, 0);
    assert_eq!((v["k"].clone(), v["R"].clone()), (json!(1), json!([[0]])));

    assert_eq!(symdiag(&["synth", "[0,1,2]"]).status.code(), Some(1));
    assert_eq!(symdiag(&["synth", "[[2,0],[1,0]]"]).status.code(), Some(1));
    assert_eq!(symdiag(&["synth", "not json"]).status.code(), Some(1));
    assert_eq!(symdiag(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn synth_complex_ccz() {
    let mut entries = vec![json!([1.0, 0.0]); 8];
    entries[7] = json!([-1.0, 0.0]);
    let arg = serde_json::to_string(&entries).unwrap();
    let (code, v) = json_out(&["--json", "synth", &arg]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "infeasible");
}

#[test]
fn conjugate_and_trace() {
    let (code, v) = json_out(&["--json", "conjugate", "T", r#"{"a":[1],"b":[0]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"phi":7,"label":{"a":[1],"b":[1]},"R_tilde":[[1]],"k_next":2}));

    let (_, v) = json_out(&["--json", "conjugate", r#"{"k":3,"R":[[1,1],[1,3]]}"#, r#"{"a":[0,0],"b":[1,1]}"#]);
    assert_eq!(v["phi"], 0);
    assert_eq!(v["label"], json!({"a":[0,0],"b":[1,1]}));

    let (_, v) = json_out(&["--json", "conjugate", "--trace", "T", r#"{"a":[1],"b":[0]}"#]);
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 2);
    assert_eq!(steps[1]["k_next"], 1);

    let bad = symdiag(&["conjugate", "CZ", r#"{"a":[1],"b":[0]}"#]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn table_and_count() {
    let (_, v) = json_out(&["--json", "table"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 14);
    let t = rows.iter().find(|r| r["name"] == "T").unwrap();
    assert_eq!(t["diagonal"], json!([0, 1]));

    let (_, v) = json_out(&["--json", "count", "--m", "3", "--k", "3"]);
    assert_eq!(v["order"], "32768");
    let (code, v) = json_out(&["--json", "count", "--m", "2", "--k", "2", "--enumerate"]);
    assert_eq!((code, v["enumerated"].clone()), (0, json!(32)));
    assert_eq!(symdiag(&["count", "--m", "4", "--k", "4", "--enumerate"]).status.code(), Some(1));
}

#[test]
fn verify_subcommand() {
    let (code, v) = json_out(&["--json", "verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);

    let out = symdiag(&["verify", "--m", "1", "--k", "3", "--exhaustive-paulis", "--exhaustive-forms"]);
    assert_eq!(out.status.code(), Some(0));

    let (code, v) = json_out(&["--json", "verify", "--inject-fault"]);
    assert_eq!(code, 1);
    assert!(v["suites"][0]["counterexample"].is_string());

    assert_eq!(symdiag(&["verify", "--m", "6"]).status.code(), Some(1));
}

#[test]
fn verify_is_deterministic() {
    let a = symdiag(&["--json", "--seed", "9", "verify", "--samples", "10"]).stdout;
    let b = symdiag(&["--json", "--seed", "9", "verify", "--samples", "10"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn tensor_add_gamma() {
    let (_, v) = json_out(&["--json", "tensor", "P", "I"]);
    assert_eq!(v["R"], json!([[2, 0], [0, 0]]));
    let (_, v) = json_out(&["--json", "add", "T", "T"]);
    assert_eq!(v["R"], json!([[2]]));
    let (code, v) = json_out(&["--json", "gamma", "CZ"]);
    assert_eq!(code, 0);
    assert_eq!(v["symplectic_mod2"], true);
    assert_eq!(v["gamma"][0], json!([1, 0, 0, 2]));
}

#[test]
fn track_from_file() {
    let dir = std::env::temp_dir().join(format!("symdiag-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("circuit.json");
    std::fs::write(
        &path,
        r#"{"m":2,"k":3,"layers":[
            {"type":"clifford","gen":"H"},
            {"type":"diagonal","R":[[1,1],[1,3]]},
            {"type":"clifford","gen":"partialH","params":1}]}"#,
    )
    .unwrap();
    let (code, v) = json_out(&["--json", "track", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(v["max_deviation"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["generators"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(dir).unwrap();
}
