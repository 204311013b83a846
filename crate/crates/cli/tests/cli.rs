use std::process::{Command, Output};

use serde_json::Value;

use seifert_cli::{cmd_delta, cmd_verify, Policy, EXIT_DOMAIN, EXIT_USAGE, SCHEMA};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seifert-delta"))
        .args(args)
        .env("SEIFERT_DELTA_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(v["schema"], SCHEMA);
    v
}

fn multiset(v: &Value) -> Vec<(String, u64)> {
    v["result"]["multiset"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["value"].as_str().unwrap().to_owned(), e["multiplicity"].as_u64().unwrap()))
        .collect()
}

#[test]
fn hantzsche_wendt_report() {
    let v = json(&["delta", "1;(2,1),(2,1)"]);
    assert_eq!(v["command"], "delta");
    assert_eq!(v["result"]["h1_order"], "16");
    assert_eq!(v["result"]["structures"].as_array().unwrap().len(), 16);
    assert_eq!(
        multiset(&v),
        vec![("-1/4".into(), 6), ("0".into(), 4), ("1/4".into(), 6)]
    );
    assert_eq!(v["diagnostics"]["assembly_routes_agree"], true);
}

#[test]
fn circle_bundle_values() {
    let v = json(&["delta", "3;"]);
    let structures = v["result"]["structures"].as_array().unwrap();
    assert_eq!(structures.len(), 4);
    assert_eq!(multiset(&v), vec![("0".into(), 2), ("1/8".into(), 1), ("5/8".into(), 1)]);
    let plus_first = json(&["--policy", "plus-first", "delta", "3;"]);
    let exact: Vec<&str> = plus_first["result"]["structures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["delta_invariant"].as_str().expect("plus-first resolves every sign"))
        .collect();
    let mut sorted = exact.clone();
    sorted.sort();
    assert_eq!(sorted, vec!["0", "0", "1/8", "5/8"]);
}

#[test]
fn negative_euler_number_is_accepted() {
    let v = json(&["delta", "-1;(2,1)"]);
    assert_eq!(v["result"]["normalized"], "-1;(2,1)");
    assert_eq!(v["result"]["h1_order"], "8");
}

#[test]
fn normalization_is_reported() {
    let v = json(&["delta", "0;(2,3)"]);
    assert_eq!(v["result"]["normalized"], "-1;(2,1)");
}

#[test]
fn thin_wrappers() {
    assert_eq!(json(&["dedekind", "1", "3"])["result"], "1/18");
    assert_eq!(json(&["lambda", "1", "2", "0"])["result"], "1/8");
    let lens = json(&["lens", "2", "1"]);
    let vals: Vec<&str> = lens["result"].as_array().unwrap().iter().map(|r| r["delta"].as_str().unwrap()).collect();
    assert_eq!(vals, vec!["1/8", "-1/8"]);
    let one = json(&["lens", "5", "-1", "7"]);
    assert_eq!(one["result"][0]["u"], 2);
}

#[test]
fn prism_residues_are_small() {
    let v = json(&["prism", "3", "5"]);
    assert_eq!(v["result"]["order"], 60);
    for d in v["diagnostics"]["group_sums"].as_array().unwrap() {
        assert!(d["residue"].as_f64().unwrap() < 1e-9, "{d}");
    }
}

#[test]
fn plumb_reports_relation() {
    let v = json(&["plumb", "1;(2,1),(2,1)"]);
    assert_eq!(v["result"]["central_weight"], -2);
    assert_eq!(v["result"]["sigma_double"], -4);
    assert_eq!(v["result"]["relation_holds"], true);
}

#[test]
fn table_output() {
    let out = run(&["--table", "lens", "2", "1"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "L(2,1)\n  u=0 delta=1/8\n  u=1 delta=-1/8\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["delta", "garbage"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["verify", "bogus", "5"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["verify", "arith", "0"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["lens", "4", "2"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["delta", "0;(4,2)"]).status.code(), Some(EXIT_DOMAIN));
    assert_eq!(run(&["verify", "lens", "6"]).status.code(), Some(0));
}

#[test]
fn verify_accepts_flag_bound() {
    let v = json(&["verify", "arith", "--bound", "6"]);
    assert_eq!(v["result"]["ok"], true);
    assert_eq!(v["result"]["suites"][0]["bound"], 6);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["delta", "0;(2,1),(3,1),(5,4)"][..],
        &["verify", "all", "4"][..],
        &["prism", "4", "3"][..],
    ] {
        let a = run(args);
        let b = Command::new(env!("CARGO_BIN_EXE_seifert-delta"))
            .args(args)
            .env("SEIFERT_DELTA_THREADS", "3")
            .output()
            .unwrap();
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn library_errors_carry_codes() {
    assert_eq!(cmd_delta("(", Policy::Unresolved).unwrap_err().code, EXIT_USAGE);
    assert_eq!(cmd_delta("1;(6,4)", Policy::Unresolved).unwrap_err().code, EXIT_DOMAIN);
    assert_eq!(cmd_verify("nope", 3).unwrap_err().code, EXIT_USAGE);
}
