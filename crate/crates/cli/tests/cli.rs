use std::process::{Command, Output};

use serde_json::Value;

fn cms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cms"))
        .args(args)
        .output()
        .expect("cms runs")
}

fn code(args: &[&str]) -> i32 {
    cms(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let out = cms(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn jack_json() {
    let v = json(&["jack", "--partition", "2"]);
    assert_eq!(v["label"], "2");
    assert_eq!(v["family"], "trigA");
    let exp = v["expansion"].as_array().unwrap();
    assert_eq!(exp.len(), 2);
    assert_eq!(exp[0]["partition"], "2");
    assert_eq!(exp[0]["coefficient"], "1");
    assert_eq!(exp[1]["partition"], "1,1");
    assert_eq!(exp[1]["coefficient"], "(2*k)/(k - 1)");
}

#[test]
fn jack_with_bound_parameters() {
    let v = json(&["jack", "--partition", "1,1", "--bind", "k=2", "--bind", "p0=3"]);
    assert_eq!(v["eigenvalue"], "-2");
}

#[test]
fn jacobi_empty_partition() {
    let v = json(&["jacobi", "--partition", "-"]);
    assert_eq!(v["eigenvalue"], "0");
    assert_eq!(v["expansion"][0]["coefficient"], "1");
}

#[test]
fn superjacobi_json_and_euler() {
    let v = json(&["superjacobi", "--partition", "1", "--m", "1", "--n", "1"]);
    assert_eq!(v["m"], 1);
    assert_eq!(v["n"], 1);
    assert!(v["value"].as_str().unwrap().contains("u1"));
    let out = cms(&["superjacobi", "--partition", "-", "--m", "1", "--n", "1", "--euler", "odd", "--format", "text"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1");
}

#[test]
fn verify_report_shape() {
    let v = json(&["verify", "diagram-trigA", "--max-degree", "2", "--N", "2"]);
    assert_eq!(v["suite"], "diagram-trigA");
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(v["summary"]["total"].as_u64().unwrap() as usize, cases.len());
    assert_eq!(v["summary"]["failed"], 0);
    assert!(cases.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["verify", "momentum", "--max-degree", "2"]), 0);
    assert_eq!(code(&["verify", "theorem1", "--m", "1", "--n", "1", "--max-degree", "2", "--bind", "h=0"]), 1);
    assert_eq!(code(&["jack", "--partition", "2", "--bind", "k=1"]), 2);
    assert_eq!(code(&["jack", "--partition", "x"]), 3);
    assert_eq!(code(&["jack", "--partition", "1", "--bind", "q=1"]), 3);
    assert_eq!(code(&["jack", "--partition", "1", "--bind", "k=sqrt2"]), 3);
    assert_eq!(code(&["verify", "no-such-suite"]), 3);
    assert_eq!(code(&["verify", "theorem1", "--m", "1"]), 3);
    assert_eq!(code(&["superjacobi", "--partition", "1", "--m", "1", "--n", "1", "--bind", "k=0"]), 4);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn resonance_names_the_partitions() {
    let out = cms(&["jack", "--partition", "2", "--bind", "k=1"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("e(2) - e(1,1)"), "{err}");
}

#[test]
fn same_seed_same_bytes() {
    let args = ["verify", "diagram-bc", "--m", "1", "--n", "0", "--max-degree", "2", "--seed", "7"];
    let a = cms(&args);
    let b = cms(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_format() {
    let out = cms(&["verify", "momentum", "--max-degree", "2", "--format", "text"]);
    let s = String::from_utf8_lossy(&out.stdout);
    assert!(s.lines().next().unwrap().starts_with("PASS"), "{s}");
}
