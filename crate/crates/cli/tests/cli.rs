use serde_json::Value;
use skewtorsion::catalog::{self, Params as EntryParams};
use skewtorsion::commands::{self, Holonomy};
use skewtorsion::orbits::classify_form;
use skewtorsion::tables::{self, TableId};
use skewtorsion::{Form, Rational, Real};
use std::process::{Command, Output};

type Q = Rational;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewtorsion"))
        .args(args)
        .env_remove("SKEWTORSION_BACKEND")
        .output()
        .expect("binary runs")
}

fn status(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

/// Runs with `--json`, checks the envelope and returns it.
fn report(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = cli(&all);
    let value: Value = serde_json::from_slice(&out.stdout).expect("JSON on stdout");
    check_schema(&value);
    assert_eq!(value["status"].as_i64(), Some(status(&out) as i64));
    (status(&out), value)
}

fn to_value(x: impl serde::Serialize) -> Value {
    serde_json::to_value(x).unwrap()
}

/// Checks the required keys, types and enumerations listed in the shipped schema.
fn check_schema(value: &Value) {
    let schema: Value = serde_json::from_str(include_str!("../report.schema.json")).unwrap();
    let obj = value.as_object().expect("object report");
    for key in schema["required"].as_array().unwrap() {
        assert!(obj.contains_key(key.as_str().unwrap()), "missing {key}");
    }
    let props = schema["properties"].as_object().unwrap();
    for (key, v) in obj {
        let spec = props.get(key).unwrap_or_else(|| panic!("unexpected key {key}"));
        if let Some(ty) = spec["type"].as_str() {
            let ok = match ty {
                "string" => v.is_string(),
                "number" => v.is_number(),
                "integer" => v.is_i64(),
                _ => true,
            };
            assert!(ok, "{key} is not {ty}");
        }
        if let Some(options) = spec["enum"].as_array() {
            assert!(options.contains(v), "{key} = {v} outside its enumeration");
        }
    }
    assert!(obj.contains_key("result") != obj.contains_key("error"));
}

#[test]
fn classify_matches_the_library() {
    let (code, out) = report(&["classify", "--form", "e125+e345"]);
    assert_eq!(code, 0);
    assert_eq!(out["result"]["strictType"], "W4");
    assert_eq!(out["result"]["isoLabel"], "u2_0");
    let direct = classify_form(&Form::<Q>::parse("e125+e345").unwrap()).unwrap();
    assert_eq!(out["result"], to_value(direct));
}

#[test]
fn parse_errors_exit_with_validation_status() {
    let out = cli(&["classify", "--form", "e999"]);
    assert_eq!(status(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
    let (code, value) = report(&["classify", "--form", "e12"]);
    assert_eq!(code, 2);
    assert!(value["error"].as_str().unwrap().contains("degree"));
}

#[test]
fn unknown_flags_print_usage() {
    let out = cli(&["classify", "--bogus"]);
    assert_eq!(status(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(status(&cli(&["frobnicate"])), 2);
    assert_eq!(status(&cli(&["--help"])), 0);
}

#[test]
fn family_then_isotropy() {
    let (code, fam) = report(&["family", "--case", "X", "--beta2", "1"]);
    assert_eq!(code, 0);
    let (t, direct) = commands::family::<Q>("X", "beta2=1", 1e-9).unwrap();
    assert_eq!(fam["result"], to_value(direct));
    let (code, iso) = report(&["isotropy", "--case", "X", "--beta2", "1"]);
    assert_eq!(code, 0);
    assert_eq!(iso["result"]["dim"], 3);
    assert_eq!(iso["result"]["label"], "so3");
    assert_eq!(iso["result"], to_value(commands::isotropy(&t).unwrap()));
    let form = fam["result"]["torsion"].as_str().unwrap();
    let (_, by_form) = report(&["isotropy", "--form", form]);
    assert_eq!(by_form["result"], iso["result"]);
}

#[test]
fn violated_row_conditions_are_validation_errors() {
    let (code, value) = report(&["family", "--case", "I", "--alpha5", "-1"]);
    assert_eq!(code, 2);
    assert!(value["error"].as_str().unwrap().contains("condition"));
    assert_eq!(report(&["family", "--case", "XII"]).0, 2);
}

#[test]
fn sigma_clifford_and_spinors_match_the_library() {
    let text = "e145+e235+e136-e246";
    let t = Form::<Q>::parse(text).unwrap();
    let (_, sigma) = report(&["sigma", "--form", text]);
    assert_eq!(sigma["result"], to_value(commands::sigma_report(&t).unwrap()));
    let (_, cl) = report(&["clifford", "--form", text]);
    assert_eq!(cl["result"], to_value(commands::clifford(&t, 1e-9).unwrap()));
    let (_, sp) = report(&["spinors", "--form", text, "--hol", "so3"]);
    assert_eq!(sp["result"], to_value(commands::spinors(&t, &Holonomy::So3).unwrap()));
    assert_eq!(sp["result"]["parallelSpinors"], 2);
    let (_, sp) = report(&["spinors", "--form", "e125-e345", "--hol", "e12-e34"]);
    assert_eq!(sp["result"]["parallelSpinors"], 4);
}

#[test]
fn float_backend_from_flag_and_environment() {
    let (_, flag) = report(&["--backend", "float", "spinors", "--form", "e145+e235"]);
    assert_eq!(flag["backend"], "float");
    let t = Form::<Real>::parse("e145+e235").unwrap();
    assert_eq!(flag["result"], to_value(commands::spinors(&t, &Holonomy::Isotropy).unwrap()));
    let out = Command::new(env!("CARGO_BIN_EXE_skewtorsion"))
        .args(["clifford", "--form", "e125", "--json"])
        .env("SKEWTORSION_BACKEND", "float")
        .output()
        .unwrap();
    let value: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["backend"], "float");
    assert_eq!(value["result"]["scalarSquare"], true);
}

#[test]
fn examples_and_sweeps_match_the_library() {
    let (code, ex) = report(&["example", "e3-so3"]);
    assert_eq!(code, 0);
    let direct = catalog::report::<Q>("e3-so3", &EntryParams::new()).unwrap();
    assert_eq!(ex["result"], to_value(direct));
    let (_, listing) = report(&["example"]);
    assert_eq!(listing["result"], to_value(catalog::entries()));
    // a square root promotes the exact backend instead of failing
    let (code, so3) = report(&["example", "s3xs3-so3"]);
    assert_eq!(code, 0);
    assert_eq!(so3["backend"], "surd");
    assert_eq!(so3["result"]["invariants"]["norm2T2"], "16/3");
    let (code, sweep) = report(&["sweep", "nil-iii", "--axis", "a3=2,3", "--axis", "a4=1"]);
    assert_eq!(code, 0);
    assert_eq!(sweep["result"].as_array().unwrap().len(), 2);
    let (code, empty) = report(&["sweep", "nil-iii"]);
    assert_eq!(code, 0);
    assert_eq!(empty["result"], Value::Array(vec![]));
    assert_eq!(report(&["example", "no-such-entry"]).0, 2);
}

#[test]
fn betti_and_invariants_match_the_library() {
    let (_, b) = report(&["betti", "--equations", "(0,0,0,0,12,34)"]);
    assert_eq!(b["result"], to_value(commands::betti::<Q>("(0,0,0,0,12,34)", "").unwrap()));
    assert_eq!(b["result"]["betti"], serde_json::json!([1, 4, 8, 10, 8, 4, 1]));
    let (_, inv) = report(&["invariants", "--max-degree", "3"]);
    assert_eq!(inv["result"], to_value(commands::invariants(3, false).unwrap()));
    assert_eq!(report(&["invariants", "--max-degree", "0"]).0, 2);
}

#[test]
fn tables_selection() {
    let (code, empty) = report(&["tables"]);
    assert_eq!(code, 0);
    assert_eq!(empty["result"], Value::Array(vec![]));
    let (code, t3) = report(&["tables", "3"]);
    assert_eq!(code, 0);
    assert_eq!(t3["result"], to_value(tables::reproduce(&[TableId::TorusFixed]).unwrap()));
    let (code, nil) = report(&["tables", "5-nil"]);
    assert_eq!(code, 0);
    let rows = nil["result"][0]["rows"].as_array().unwrap();
    let matched: Vec<&str> = rows
        .iter()
        .filter(|r| r["status"] == "match")
        .map(|r| r["computed"].as_str().unwrap())
        .collect();
    for pair in ["b1=5 b2=11", "b1=4 b2=8", "b1=5 b2=9"] {
        assert!(matched.iter().any(|c| c.contains(pair)), "{pair}");
    }
    assert_eq!(report(&["tables", "9"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    for args in [&["classify", "--form", "3e135+e146+e236+e245", "--json"][..], &["tables", "3"][..]] {
        let a = cli(args);
        let b = cli(args);
        assert_eq!(a.stdout, b.stdout);
    }
}
