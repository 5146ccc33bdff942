use std::process::Command;

use serde_json::Value;
use toroidal_exact::{rf_parse, RatFun};

fn toroidal(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_toroidal")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, s) = toroidal(args);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(&s).unwrap()
}

#[test]
fn rblock_weight_one_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r1.json");
    let (code, _) = toroidal(&["rblock", "--weight", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let e = v["entries"].as_object().unwrap();
    assert_eq!(e.len(), 4);
    let get = |k: &str| rf_parse(e[k].as_str().unwrap()).unwrap();
    assert_eq!(get("<1|0>-><0|1>"), rf_parse("(1 - t*q^-1)/(1 - u*t*q^-1)").unwrap());
    assert_eq!(get("<0|1>-><1|0>"), rf_parse("u*(1 - t*q^-1)/(1 - u*t*q^-1)").unwrap());
}

#[test]
fn json_strings_round_trip() {
    let v = json(&["rblock", "--weight", "2"]);
    for s in v["entries"].as_object().unwrap().values() {
        let s = s.as_str().unwrap();
        let f: RatFun = rf_parse(s).unwrap();
        assert_eq!(f.to_string(), s);
    }
}

#[test]
fn macdonald_degree_two() {
    let v = json(&["macdonald", "--degree", "2"]);
    let polys = v["polynomials"].as_array().unwrap();
    assert_eq!(polys.len(), 2);
    let p2 = &polys[0]["coeffs"];
    assert_eq!(rf_parse(p2["2"].as_str().unwrap()).unwrap(), rf_parse("(1 - q)*(1 + t)/(2*(1 - q*t))").unwrap());
}

#[test]
fn verifiers_exit_zero() {
    assert_eq!(json(&["verify-ybe", "--weight", "1"])["status"], "pass");
    assert_eq!(json(&["verify-c", "--weight", "2"])["status"], "pass");
    assert_eq!(json(&["verify-poles", "--weight", "2"])["status"], "pass");
}

#[test]
fn cap_and_bad_input() {
    assert_eq!(toroidal(&["rblock", "--weight", "5"]).0, 2);
    assert_eq!(toroidal(&["rblock", "--weight", "5", "--cap", "3"]).0, 2);
    assert_eq!(toroidal(&["eigen", "--alpha", "2,x"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("x.json");
    assert_eq!(toroidal(&["kmatrix", "--weight", "1", "--out", bad.to_str().unwrap()]).0, 2);
}

#[test]
fn eigen_and_tangent() {
    let v = json(&["eigen", "--alpha", "1", "--order", "2"]);
    assert_eq!(rf_parse(v["normalized"].as_str().unwrap()).unwrap(), rf_parse("(1 - u^-1)/(1 - u^-1*q/t)").unwrap());
    assert_eq!(v["series"]["coeffs"].as_array().unwrap().len(), 3);
    let t = json(&["tangent", "--lambdas", "2,1;1"]);
    assert_eq!(t["dimension"], 16);
    assert_eq!(t["symplectic_pairing"], true);
}

#[test]
fn shuffle_and_pretty() {
    let v = json(&["shuffle", "--m", "1", "--n", "2"]);
    assert_eq!(v["commutes"], true);
    assert_eq!(v["wheel_check"], true);
    let (code, s) = toroidal(&["kmatrix", "--weight", "1", "--pretty"]);
    assert_eq!(code, 0);
    assert!(s.contains("entries.<0|1>-><1|0> = "));
}

#[test]
fn cache_directory_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_toroidal"))
        .args(["macdonald", "--degree", "3"])
        .env("TOROIDAL_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("g_3.json").exists());
    let again = Command::new(env!("CARGO_BIN_EXE_toroidal"))
        .args(["macdonald", "--degree", "3"])
        .env("TOROIDAL_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.stdout, again.stdout);
}
