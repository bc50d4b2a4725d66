//! Golden-file tests for every subcommand. Set `WG_BLESS=1` to rewrite the
//! expected outputs.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn wg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wg")).args(args).env_remove("WG_KMAX").output().expect("binary runs")
}

fn golden(name: &str, args: &[&str]) {
    let out = wg(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let path = golden_dir().join(name);
    let actual = String::from_utf8(out.stdout).unwrap();
    if std::env::var_os("WG_BLESS").is_some() {
        fs::write(&path, &actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "{args:?}");
}

fn error_kind(out: &Output) -> String {
    let err: Value = serde_json::from_slice(&out.stderr).expect("error object is JSON");
    err["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn partitions() {
    golden("partitions_oplus_4.json", &["partitions", "--cat", "O+", "--k", "4"]);
    golden("partitions_s_3.csv", &["partitions", "--cat", "S", "--k", "3", "--format", "csv"]);
}

#[test]
fn gram_and_invert() {
    golden("gram_s_2_3.json", &["gram", "--cat", "S", "--k", "2", "--n", "3"]);
    golden("gram_s_2_3.csv", &["gram", "--cat", "S", "--k", "2", "--n", "3", "--format", "csv"]);
    golden("invert_s_2_3.json", &["invert", "--cat", "S", "--k", "2", "--n", "3"]);
    golden("invert_o_4_2.csv", &["invert", "--cat", "O", "--k", "4", "--n", "2", "--format", "csv"]);
}

#[test]
fn integrate() {
    golden("integrate_s_3.json", &["integrate", "--cat", "S", "--n", "3", "--i", "1", "--j", "1"]);
    golden("integrate_s_3_pair.json", &["integrate", "--cat", "S", "--n", "3", "--i", "1,2", "--j", "1,1"]);
    golden("integrate_o_2.json", &["integrate", "--cat", "O", "--n", "2", "--i", "1,1,1,1", "--j", "1,1,1,1"]);
}

#[test]
fn transform() {
    golden("transform_free.json", &["transform", "--species", "free", "--direction", "m2c", "--moments", "0,1,0,2"]);
    golden("transform_classical_c2m.json", &["transform", "--species", "classical", "--direction", "c2m", "--moments", "0,1,0,0,0,0"]);
    let file = golden_dir().join("moments.json");
    let file = file.to_str().unwrap();
    golden("transform_file.json", &["transform", "--species", "classical", "--direction", "m2c", "--file", file]);
    golden("transform_file.csv", &["transform", "--species", "classical", "--direction", "m2c", "--file", file, "--format", "csv"]);
}

#[test]
fn oracle() {
    golden("oracle_s_3.json", &["oracle", "--group", "S", "--n", "3", "--i", "1", "--j", "1"]);
    golden("oracle_h_2.json", &["oracle", "--group", "H", "--n", "2", "--i", "1,1", "--j", "1,1"]);
}

#[test]
fn mc() {
    golden("mc_o_4.json", &["mc", "--group", "O", "--n", "4", "--samples", "20000", "--seed", "42"]);
    let out = wg(&["mc", "--group", "O", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2), "seed is mandatory");
}

#[test]
fn gap() {
    golden("gap_urn.json", &["gap", "urn", "--values", "1,-1,1,-1", "--word", "1,2"]);
    golden("gap_sphere.json", &["gap", "sphere", "--n", "10", "--word", "1,1,1,1"]);
    golden("gap_sphere.csv", &["gap", "sphere", "--n", "10", "--word", "1,1,1,1", "--format", "csv"]);
}

#[test]
fn ck() {
    golden("ck_s_2.json", &["ck", "--cat", "S", "--k", "2", "--nmax", "64"]);
}

#[test]
fn verify() {
    golden("verify_west.json", &["verify", "west", "--cat", "O+", "--k", "4", "--nmax", "64"]);
    golden("verify_counts.json", &["verify", "counts", "--k", "6"]);
}

#[test]
fn validation_errors_exit_2() {
    for (args, kind) in [
        (vec!["integrate", "--cat", "Q", "--n", "3", "--i", "1", "--j", "1"], "usage"),
        (vec!["partitions", "--cat", "S", "--k", "30"], "size_limit"),
        (vec!["integrate", "--cat", "S", "--n", "3", "--i", "1", "--j", "1,1"], "length_mismatch"),
        (vec!["integrate", "--cat", "S", "--n", "3", "--i", "4", "--j", "1"], "letter_out_of_range"),
        (vec!["oracle", "--group", "S", "--n", "9", "--i", "1", "--j", "1"], "group_too_large"),
        (vec!["gap", "urn", "--values", "1,x", "--word", "1"], "parse"),
        (vec!["bogus"], "usage"),
    ] {
        let out = wg(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(error_kind(&out), kind, "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn kmax_flag_and_env() {
    let out = wg(&["partitions", "--cat", "S", "--k", "4", "--kmax", "3"]);
    assert_eq!(error_kind(&out), "size_limit");
    let out = Command::new(env!("CARGO_BIN_EXE_wg"))
        .args(["partitions", "--cat", "S", "--k", "4"])
        .env("WG_KMAX", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(wg(&["partitions", "--cat", "S", "--k", "4", "--kmax", "4"]).status.success());
}

#[test]
fn verify_exit_status_reflects_violations() {
    let out = wg(&["verify", "mc", "--cat", "O", "--n", "3", "--k", "2", "--samples", "2", "--seed", "5"]);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let expected = if report["passed"].as_bool().unwrap() { 0 } else { 1 };
    assert_eq!(out.status.code(), Some(expected));
}

#[test]
fn help_exits_zero() {
    assert!(wg(&["--help"]).status.success());
}
