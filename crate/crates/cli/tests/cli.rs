use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};
use vosa_core::Scalar;

fn vosa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vosa"))
        .args(args)
        .env_remove("VOSA_DEPTH")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scalar(v: &Value) -> Scalar {
    serde_json::from_value(v.clone()).expect("scalar JSON")
}

fn write_temp(name: &str, value: &Value) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vosa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, value.to_string()).unwrap();
    path
}

fn gram_at(out: &Output, grade: usize) -> Vec<Vec<Scalar>> {
    let v = json_of(out);
    v["levels"][grade]["gram"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row.as_array().unwrap().iter().map(scalar).collect())
        .collect()
}

#[test]
fn catalog_has_nine_rows() {
    let out = vosa(&["catalog"]);
    assert!(out.status.success());
    let rows = json_of(&out);
    assert_eq!(rows.as_array().unwrap().len(), 9);
    assert_eq!(rows[0]["dual_coxeter"], "n+1");
    let g2 = json_of(&vosa(&["catalog", "--algebra", "G2"]));
    assert_eq!(g2["dual_coxeter"], 4);
}

#[test]
fn gram_of_small_levels() {
    let out = vosa(&["gram", "--c", "1/2", "--h", "0", "--depth", "1/2"]);
    assert!(out.status.success());
    assert_eq!(gram_at(&out, 1), vec![vec![Scalar::zero()]]);

    let fermion = write_temp("fermion.json", &json!({"type": "fermion", "colors": 1}));
    let out = vosa(&["gram", "--input", fermion.to_str().unwrap(), "--depth", "1/2"]);
    assert_eq!(gram_at(&out, 0), vec![vec![Scalar::one()]]);

    let affine = write_temp("affine.json", &json!({"type": "affine", "algebra": "sl2", "level": 1}));
    let out = vosa(&["gram", "--input", affine.to_str().unwrap(), "--depth", "1"]);
    let g = gram_at(&out, 1);
    assert_eq!(g.len(), 3);
    for (i, row) in g.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            assert_eq!(*x, if i == j { Scalar::one() } else { Scalar::zero() });
        }
    }
}

#[test]
fn nullvec_finds_the_level_half_vector() {
    let out = vosa(&["nullvec", "--c", "1/2", "--h", "0", "--depth", "1"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["levels"][1]["null_vectors"].as_array().unwrap().len(), 1);
}

#[test]
fn ghosts_report() {
    let out = vosa(&["ghosts", "--c", "1/2", "--h", "0", "--depth", "2"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["ghost_free"], true);
    let out = vosa(&["ghosts", "--c", "1/2", "--h", "-1/2", "--depth", "1"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["ghost_free"], false);
}

#[test]
fn susy_check_on_sl2_level_one() {
    let out = vosa(&["susy-check", "--algebra", "sl2", "--level", "1", "--depth", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(scalar(&v["c_total"]), Scalar::from_frac(5, 2));
    assert_eq!(scalar(&v["h"]), Scalar::zero());
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn module_reports_its_weight() {
    let out = vosa(&["module", "--level", "1", "--spin", "1/2", "--depth", "1", "--bound", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(scalar(&json_of(&out)["h"]), Scalar::from_frac(1, 4));
}

#[test]
fn ope_of_fermions() {
    let input = write_temp(
        "psi.json",
        &json!({
            "module": {"type": "fermion", "colors": 1},
            "a": {"gen": "psi", "color": 0},
            "b": {"gen": "psi", "color": 0},
        }),
    );
    let out = vosa(&["ope", "--input", input.to_str().unwrap(), "--depth", "2"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["order"], 1);
    assert_eq!(
        v["terms"][0]["state"],
        json!([{"word": [], "floor": 0, "coeff": [{"num": 1, "den": 1, "rad": 1}]}])
    );
    let out = vosa(&["brackets", "--input", input.to_str().unwrap(), "--depth", "2"]);
    assert!(out.status.success());
}

#[test]
fn axioms_and_cocycles_pass() {
    let out = vosa(&["axioms", "--depth", "2", "--samples", "3", "--seed", "7"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let again = vosa(&["axioms", "--depth", "2", "--samples", "3", "--seed", "7"]);
    assert_eq!(out.stdout, again.stdout);
    assert!(vosa(&["cocycle", "--depth", "11/2"]).status.success());
}

#[test]
fn invalid_structure_constants_fail_the_check() {
    let bad = write_temp(
        "bad.json",
        &json!({"name": "bad", "dim": 3, "gamma": [{"a": 0, "b": 1, "c": 2, "val": [{"num": 1, "den": 1, "rad": 1}]}]}),
    );
    let out = vosa(&["validate", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["valid"], false);
    let out = vosa(&["validate", "--algebra", "sl2"]);
    assert!(out.status.success());
    assert_eq!(scalar(&json_of(&out)["dual_coxeter"]), Scalar::from_int(2));
}

#[test]
fn malformed_input_exits_two() {
    let garbage = write_temp("garbage.json", &json!({"type": "torus"}));
    let out = vosa(&["gram", "--input", garbage.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(vosa(&["gram", "--input", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(vosa(&["ghosts", "--c", "1/2", "--h", "0", "--depth", "0"]).status.code(), Some(2));
    assert_eq!(vosa(&["ghosts", "--c", "x", "--h", "0"]).status.code(), Some(2));
    assert_eq!(vosa(&["sugawara", "--algebra", "nope"]).status.code(), Some(2));
}

#[test]
fn depth_defaults_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_vosa"))
        .args(["ghosts", "--c", "1", "--h", "1"])
        .env("VOSA_DEPTH", "1")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["levels"].as_array().unwrap().len(), 3);
}

#[test]
fn output_is_deterministic() {
    let args = ["nullvec", "--c", "7/10", "--h", "1/10", "--depth", "3"];
    assert_eq!(vosa(&args).stdout, vosa(&args).stdout);
}
