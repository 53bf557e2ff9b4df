use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    manifest().join("fixtures").join(name).display().to_string()
}

struct Run {
    code: i32,
    lines: Vec<Value>,
}

fn efftop(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_efftop")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8 output");
    let lines = stdout.lines().map(|l| serde_json::from_str(l).expect("a JSON line")).collect();
    Run { code: out.status.code().expect("exit code"), lines }
}

fn validate(schema: &str, v: &Value) {
    let path = manifest().join("../../docs/schemas").join(schema);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    if let Err(e) = validator.validate(v) {
        panic!("{} rejects {v}: {e}", path.display());
    }
}

#[test]
fn real_approx() {
    let r = efftop(&["real", "approx", "--x", "rat:1/3", "--bits", "10"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.lines[0]["q"], "1/3");
    validate("rational_result.json", &r.lines[0]);

    let r = efftop(&["real", "approx", "--x", "sqrt2", "--bits", "10"]);
    let q = efftop::reals::parse_rational(r.lines[0]["q"].as_str().unwrap()).unwrap();
    let err = &q * &q - efftop::reals::rational(2, 1);
    assert!(num_traits::Signed::abs(&err) < efftop::reals::pow2_neg(8));

    assert_eq!(efftop(&["real", "approx", "--x", "sqrt2", "--bits", "10", "--fuel", "0"]).code, 3);
    assert_eq!(efftop(&["real", "approx", "--x", "pi", "--bits", "10"]).code, 2);
}

#[test]
fn diag_reproduces_the_table() {
    let r = efftop(&["diag", "--machines", &fixture("probes.txt"), "--fuel", "10000000"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.lines.len(), 20);
    for row in &r.lines {
        validate("diag_row.json", row);
        assert_eq!(row["ok"], true, "{row}");
    }
    assert_eq!(r.lines[0]["expected"], "1/2");
    assert!(r.lines[10]["halts_known"].is_null());
}

#[test]
fn diag_edge_files() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "").unwrap();
    let r = efftop(&["diag", "--machines", empty.to_str().unwrap(), "--fuel", "1000"]);
    assert_eq!((r.code, r.lines.len()), (0, 0));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "2\nnot-a-code\n").unwrap();
    assert_eq!(efftop(&["diag", "--machines", bad.to_str().unwrap(), "--fuel", "1000"]).code, 2);
    let missing = Path::new("/nonexistent/probes.txt").to_str().unwrap();
    assert_eq!(efftop(&["diag", "--machines", missing, "--fuel", "1000"]).code, 2);
}

#[test]
fn member() {
    let r = efftop(&["member", "--x", "rat:1/2", "--open", "(0/1,1/1)", "--fuel", "1000000"]);
    assert_eq!(r.code, 0);
    validate("member.json", &r.lines[0]);
    let r = efftop(&["member", "--x", "rat:2/1", "--open", "(0/1,1/1)", "--fuel", "1000000"]);
    assert_eq!((r.code, r.lines.len()), (3, 0));

    let sp = fixture("sierpinski.json");
    assert_eq!(efftop(&["member", "--space", &sp, "--x", "1", "--open", "1", "--fuel", "100000"]).code, 0);
    assert_eq!(efftop(&["member", "--space", &sp, "--x", "0", "--open", "1", "--fuel", "100000"]).code, 3);
    assert_eq!(efftop(&["member", "--space", &sp, "--x", "1", "--open", "0", "--fuel", "100000"]).code, 2);
}

#[test]
fn wso() {
    let r = efftop(&["wso", "--set", "full", "--fuel", "1000"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.lines[0]["n"], 0);
    validate("wso.json", &r.lines[0]);
    assert_eq!(efftop(&["wso", "--set", "beta:7", "--fuel", "100000"]).lines[0]["n"], 3);
    assert_eq!(efftop(&["wso", "--set", "position:3=1", "--fuel", "100000"]).code, 3);
    assert_eq!(efftop(&["wso", "--set", "nonsense", "--fuel", "100"]).code, 2);
}

#[test]
fn sober_limit_and_norm() {
    let r = efftop(&["sober-recover", "--x", "rat:1/3", "--bits", "6", "--fuel", "10000000"]);
    assert_eq!(r.code, 0);
    validate("rational_result.json", &r.lines[0]);
    let q = efftop::reals::parse_rational(r.lines[0]["q"].as_str().unwrap()).unwrap();
    assert!(efftop::reals::within(&q, &efftop::reals::rational(1, 3), &efftop::reals::pow2_neg(6)));

    let r = efftop(&["limit", "--seq", "one-minus-pow2", "--bits", "12", "--fuel", "1000000"]);
    validate("rational_result.json", &r.lines[0]);
    let q = efftop::reals::parse_rational(r.lines[0]["q"].as_str().unwrap()).unwrap();
    assert!(efftop::reals::within(&q, &efftop::reals::rational(1, 1), &efftop::reals::pow2_neg(12)));
    assert_eq!(efftop(&["limit", "--seq", "pow2", "--modulus", "cubic", "--bits", "3", "--fuel", "10"]).code, 2);

    let r = efftop(&["nplus-norm", "--witness", "pow2", "--open", "(-1/8,1/8)", "--fuel", "10000000"]);
    assert_eq!(r.code, 0);
    validate("nplus_norm.json", &r.lines[0]);
    assert_eq!(efftop(&["nplus-norm", "--witness", "pow2", "--open", "empty", "--fuel", "100000"]).code, 3);
}

#[test]
fn finite_commands() {
    let sp = fixture("sierpinski.json");
    let r = efftop(&["finite", "markov", "--space", &sp]);
    assert_eq!(r.code, 0);
    assert_eq!(r.lines[0], serde_json::json!([[0, [1]]]));
    validate("finite_markov.json", &r.lines[0]);

    let r = efftop(&["finite", "tau-from-sd", "--space", &sp, "--set", "set:1"]);
    assert_eq!(r.lines[0]["points"], serde_json::json!([1]));
    validate("finite_tau.json", &r.lines[0]);
    // {0} is not open, so no stable open is reached
    assert_eq!(efftop(&["finite", "tau-from-sd", "--space", &sp, "--set", "set:0"]).code, 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"points": [0, 1], "opens": [[], [0]]}"#).unwrap();
    assert_eq!(efftop(&["finite", "markov", "--space", bad.to_str().unwrap()]).code, 2);
}

#[test]
fn nonsd_sweep() {
    let r = efftop(&["nonsd-sweep", "--a", "0", "--b", "1", "--max-code", "5000", "--fuel", "1000"]);
    assert_eq!(r.code, 0);
    validate("nonsd_sweep.json", &r.lines[0]);
    assert_eq!(r.lines[0]["refuted_by"], "138");
}

#[test]
fn output_is_reproducible() {
    let args = ["diag", "--machines", &fixture("probes.txt"), "--fuel", "1000000"];
    let a = Command::new(env!("CARGO_BIN_EXE_efftop")).args(args).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_efftop")).args(args).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}
