use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use skeingram::verify::{formula, FormulaSpec, FormulaTag};
use skeingram::Poly;

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skeingram"))
        .args(args)
        .env("SKEINGRAM_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(o)).unwrap()
}

fn strip_timing(mut v: Value) -> Value {
    if let Some(obj) = v.as_object_mut() {
        obj.remove("duration_ms");
    }
    v
}

#[test]
fn basis_counts() {
    let dir = tempfile::tempdir().unwrap();
    for (family, n, expected) in [("mb1union", "2", "10 (expected 10)"), ("b", "5", "252 (expected 252)"), ("mbfull", "1", "3 (expected 3)")] {
        let o = run(dir.path(), &["basis", "--family", family, "--n", n]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), expected);
    }
}

#[test]
fn basis_writes_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("basis.json");
    let o = run(dir.path(), &["basis", "--family", "b", "--n", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[0]["n"], 1);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["basis", "--family", "mbfull", "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(dir.path(), &["det", "--family", "b", "--n", "3", "--cap", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the exact cap"));
    let o = run(dir.path(), &["nullity", "--n", "2", "--k", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(dir.path(), &["verify", "--spec", "prop-2.8", "--n", "2", "--mode", "probabilistic"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn det_matches_the_annular_formula() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(dir.path(), &["det", "--family", "b", "--n", "2", "--mode", "exact"]));
    let det: Poly = serde_json::from_value(v["determinant"].clone()).unwrap();
    let expected = formula(FormulaSpec::new(FormulaTag::TheoremB, 2)).unwrap().expand();
    assert_eq!(det, expected);
}

#[test]
fn det_probabilistic_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["det", "--family", "mbfull", "--n", "2", "--mode", "probabilistic", "--trials", "3", "--seed", "9"];
    let a = strip_timing(json(&run(dir.path(), &args)));
    let b = strip_timing(json(&run(dir.path(), &args)));
    assert_eq!(a, b);
    assert_eq!(a["evaluations"].as_array().unwrap().len(), 3);
    assert_eq!(a["seed"], 9);
}

#[test]
fn verify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(dir.path(), &["verify", "--spec", "conj-mb1", "--n", "2", "--mode", "exact"]));
    assert_eq!(v["verdict"], "Pass");

    let v = json(&run(dir.path(), &["verify", "--spec", "thm-b", "--n", "1", "--mode", "exact"]));
    assert_eq!(v["verdict"], "Pass");
    let v = json(&run(dir.path(), &["det", "--family", "b", "--n", "1"]));
    let det: Poly = serde_json::from_value(v["determinant"].clone()).unwrap();
    assert_eq!(det.to_string(), "1*d^2 + -1*z^2");

    let v = json(&run(dir.path(), &["verify", "--spec", "thm-3.17", "--n", "2"]));
    assert_eq!(v["verdict"], "Pass");
    assert!(v["witness"]["quotient"].is_array());
}

#[test]
fn nullity_report() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(dir.path(), &["nullity", "--n", "2", "--k", "1", "--seed", "4"]));
    assert_eq!(v["verdict"], "Pass");
    assert_eq!(v["seed"], 4);
    assert_eq!(v["witness"]["rank"]["claimed_nullity"], 4);
}

#[test]
fn warm_cache_reproduces_reports() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["verify", "--spec", "chen-mb", "--n", "2", "--mode", "exact"][..],
        &["gram", "--family", "mb1union", "--n", "2"][..],
        &["nullity", "--n", "2", "--k", "2"][..],
    ] {
        let cold = strip_timing(json(&run(dir.path(), args)));
        let warm = strip_timing(json(&run(dir.path(), args)));
        assert_eq!(cold, warm, "{args:?}");
    }
    assert!(fs::read_dir(dir.path()).unwrap().count() >= 2);
}

#[test]
fn cached_matrix_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(dir.path(), &["gram", "--family", "mbfull", "--n", "2"]));
    let from_cli = skeingram::gram::GramMatrix::from_json(&v["matrix"].to_string()).unwrap();
    let built = skeingram::gram::build_gram(from_cli.family()).unwrap();
    assert_eq!(from_cli.basis(), built.basis());
    assert_eq!(from_cli.entries(), built.entries());
}

#[test]
fn corrupt_cache_is_recomputed_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["det", "--family", "b", "--n", "2"];
    let clean = strip_timing(json(&run(dir.path(), &args)));
    for entry in fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replacen("1", "2", 1)).unwrap();
    }
    let o = run(dir.path(), &args);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert_eq!(strip_timing(json(&o)), clean);
}

#[test]
fn table_format() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["gram", "--family", "b", "--n", "1", "--format", "table"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("#  basis"));
    assert!(text.contains("n=1;A(1,2)    d^1  z^1"), "{text}");
}
