use std::path::{Path, PathBuf};

use assert_cmd::Command;
use serde_json::Value;

fn fatpoint() -> Command {
    let mut cmd = Command::cargo_bin("fatpoint").unwrap();
    cmd.env_remove("FATPOINT_THREADS");
    cmd
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn stdout_json(cmd: &mut Command) -> Value {
    let out = cmd.assert().success().get_output().stdout.clone();
    serde_json::from_slice(&out).unwrap()
}

/// `{"error": {...}}` from stderr, after checking the exit code.
fn error_json(cmd: &mut Command, code: i32) -> Value {
    let out = cmd.assert().code(code).get_output().stderr.clone();
    let v: Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["error"]["exit_code"], code);
    v["error"].clone()
}

fn gen_star4(dir: &Path) -> PathBuf {
    let path = dir.join("s4.json");
    fatpoint()
        .args(["gen", "star", "--d", "4", "--seed", "7", "-o"])
        .arg(&path)
        .assert()
        .success();
    path
}

/// Compares with a stored output; `UPDATE_GOLDEN=1` rewrites it.
fn check_golden(name: &str, actual: &[u8]) {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(
        String::from_utf8_lossy(actual),
        String::from_utf8_lossy(&expected),
        "{name} differs"
    );
}

#[test]
fn star_sequence_and_classification() {
    let dir = tempfile::tempdir().unwrap();
    let s4 = gen_star4(dir.path());
    let seq = stdout_json(fatpoint().args(["sequence", "--mmax", "6", "--config"]).arg(&s4));
    assert_eq!(seq["result"]["beta0"], 3);
    assert_eq!(seq["result"]["beta"], serde_json::json!([1, 3, 1, 3, 1]));
    assert_eq!(seq["manifest"]["policy"], "certified");
    let class = stdout_json(fatpoint().args(["classify", "--mmax", "4", "--config"]).arg(&s4));
    assert_eq!(class["result"]["classification"]["tag"], "four_star");
}

#[test]
fn sequence_as_csv() {
    let dir = tempfile::tempdir().unwrap();
    let s4 = gen_star4(dir.path());
    let out = fatpoint()
        .args(["sequence", "--mmax", "4", "--format", "csv", "--config"])
        .arg(&s4)
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    assert_eq!(
        String::from_utf8(out).unwrap(),
        "m,alpha,beta,certified\n1,3,3,true\n2,4,1,true\n3,7,3,true\n4,8,1,true\n"
    );
}

#[test]
fn alpha_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let s4 = gen_star4(dir.path());
    let v = stdout_json(fatpoint().args(["alpha", "-m", "2", "--config"]).arg(&s4));
    assert_eq!(v["result"]["alpha"], 4);
    assert_eq!(v["result"]["witness"]["form"]["degree"], 4);
    let fast = stdout_json(
        fatpoint()
            .args(["alpha", "-m", "2", "--policy", "fast", "--config"])
            .arg(&s4),
    );
    assert_eq!(fast["result"]["alpha"], 4);
}

#[test]
fn waldschmidt_interval_strings() {
    let dir = tempfile::tempdir().unwrap();
    let s4 = gen_star4(dir.path());
    let v = stdout_json(fatpoint().args(["waldschmidt", "--mmax", "4", "--config"]).arg(&s4));
    assert_eq!(v["result"]["interval"]["upper"], "2/1");
    assert_eq!(v["result"]["interval"]["upper_at"], 2);
}

#[test]
fn bezout_fixture_with_confluence() {
    let v = stdout_json(
        fatpoint()
            .args(["bezout", "--confluence", "100", "--input"])
            .arg(fixture("quasistar_delta.json")),
    );
    let r = &v["result"];
    assert_eq!(r["decomposition"]["coeffs"], serde_json::json!([2, 2, 2, 1, 1, 1]));
    assert_eq!(r["decomposition"]["residual"]["degree"], 0);
    assert_eq!(r["confluence"]["identical"], true);
    assert_eq!(r["reconstruction_holds"], true);
    assert_eq!(r["residual_inequality_holds"], true);
    let single = stdout_json(
        fatpoint()
            .args(["bezout", "--single", "--input"])
            .arg(fixture("collinear_plus_one_delta.json")),
    );
    assert_eq!(
        single["result"]["decomposition"]["coeffs"],
        serde_json::json!([1, 1, 1])
    );
}

#[test]
fn reproduce_recipes_pass() {
    for args in [
        &["reproduce", "prop42", "--mmax", "6"][..],
        &["reproduce", "quasi_star3", "--mmax", "8"],
        &["reproduce", "star4", "--mmax", "8"],
        &["reproduce", "collinear_k", "--kmax", "4"],
        &["reproduce", "conic_example", "--kmax", "5"],
    ] {
        let v = stdout_json(fatpoint().args(args));
        assert_eq!(v["result"]["pass"], true, "{args:?}");
        assert!(v["result"]["claims"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["source"] == "paper"));
    }
}

#[test]
fn reproduce_mismatch_exits_one() {
    // the lower bound exceeds 9/4 only from m = 8 on
    let out = fatpoint()
        .args(["reproduce", "six_general", "--mmax", "4", "--no-timestamp"])
        .assert()
        .code(1)
        .get_output()
        .clone();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["pass"], false);
    let failed: Vec<&Value> = v["result"]["claims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["computed"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}

#[test]
fn same_seed_same_bytes() {
    let run = || {
        fatpoint()
            .args(["reproduce", "star4", "--mmax", "4", "--seed", "11", "--no-timestamp"])
            .assert()
            .success()
            .get_output()
            .stdout
            .clone()
    };
    assert_eq!(run(), run());
    let stamped = stdout_json(fatpoint().args(["reproduce", "star4", "--mmax", "2"]));
    assert!(stamped["timestamp"].is_u64());
    assert_eq!(stamped["manifest"]["seed"], 0);
}

#[test]
fn golden_outputs() {
    let bezout = fatpoint()
        .current_dir(fixture(""))
        .args([
            "bezout",
            "--input",
            "quasistar_delta.json",
            "--confluence",
            "10",
            "--no-timestamp",
        ])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    check_golden("bezout_quasistar.json", &bezout);
    let dir = tempfile::tempdir().unwrap();
    gen_star4(dir.path());
    check_golden("star4_seed7.json", &std::fs::read(dir.path().join("s4.json")).unwrap());
    let seq = fatpoint()
        .current_dir(dir.path())
        .args(["sequence", "--config", "s4.json", "--mmax", "5", "--no-timestamp"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    check_golden("sequence_star4.json", &seq);
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let e = error_json(fatpoint().args(["sequence", "--config", "missing.json"]), 2);
    assert_eq!(e["kind"], "parse");
    let e = error_json(fatpoint().args(["sequence", "--bogus"]), 2);
    assert_eq!(e["kind"], "usage");

    let dup = dir.path().join("dup.json");
    std::fs::write(&dup, r#"{"points": [["1","2","3"], ["2","4","6"]]}"#).unwrap();
    let e = error_json(fatpoint().args(["sequence", "--config"]).arg(&dup), 3);
    assert_eq!(e["kind"], "precondition");
    error_json(fatpoint().args(["gen", "star", "--d", "1"]), 3);
    let s4 = gen_star4(dir.path());
    error_json(fatpoint().args(["classify", "--format", "csv", "--config"]).arg(&s4), 3);

    let e = error_json(fatpoint().args(["gen", "general", "--count", "6", "--bound", "1"]), 4);
    assert_eq!(e["kind"], "genericity");
}

#[test]
fn thread_cap_from_environment() {
    let e = error_json(
        fatpoint()
            .env("FATPOINT_THREADS", "0")
            .args(["reproduce", "star4", "--mmax", "2"]),
        3,
    );
    assert!(e["message"].as_str().unwrap().contains("FATPOINT_THREADS"));
    fatpoint()
        .env("FATPOINT_THREADS", "2")
        .args(["reproduce", "collinear_k", "--kmax", "3"])
        .assert()
        .success();
}

#[test]
fn help_exits_zero() {
    fatpoint().arg("--help").assert().success();
}
