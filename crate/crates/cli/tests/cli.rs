use std::fs;
use std::path::{Path, PathBuf};

use assert_cmd::Command;
use serde_json::Value;
use tempfile::TempDir;

fn twistmat() -> Command {
    Command::cargo_bin("twistmat").unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = twistmat().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn build_to(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--json-out", path.to_str().unwrap()]);
    let (code, _, err) = run(&full);
    assert_eq!(code, 0, "{err}");
    path
}

#[test]
fn every_family_round_trips_at_default_depth() {
    let dir = TempDir::new().unwrap();
    let cases: [(&str, &[&str]); 5] = [
        ("ore", &["--variant", "ore", "--b", "2", "--c", "1"]),
        ("generic", &["--variant", "generic", "--b", "2", "--c", "-2"]),
        ("particular", &["--variant", "particular"]),
        ("anda", &["--variant", "anda", "--n", "2", "--d", "2", "--a", "1"]),
        ("bnl", &["--variant", "bnl", "--a", "1", "--L", "2,4,6,8,10,12,14,16,18,20,22"]),
    ];
    for (name, args) in cases {
        let path = build_to(dir.path(), &format!("{name}.json"), args);
        let m: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(m["valid_rows"], 24);
        let (code, out, _) = run(&["verify", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{name}: {out}");
        let (code, out, _) = run(&["classify", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.starts_with(&format!("family: {name}")), "{out}");
    }
}

#[test]
fn build_writes_json_to_stdout_without_json_out() {
    let (code, out, err) = run(&["build", "--variant", "particular", "--depth", "30"]);
    assert_eq!(code, 0);
    let m: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(m["valid_rows"], 30);
    assert!(err.contains("family: particular"));
}

#[test]
fn obstruction_certificate() {
    let (code, _, err) = run(&["build", "--variant", "generic", "--b", "5/3", "--c", "1/9"]);
    assert_eq!(code, 2);
    assert!(err.contains("Q_4(5/3, 1/9) = 0"), "{err}");
    let (code, _, err) = run(&["build", "--variant", "bnl", "--a", "1", "--L", "2,4,7,10", "--depth", "12"]);
    assert_eq!(code, 2);
    assert!(err.contains("Δ_{4,2} = 2"), "{err}");
}

#[test]
fn corrupted_matrix_fails_with_coordinates() {
    let dir = TempDir::new().unwrap();
    let path = build_to(dir.path(), "p.json", &["--variant", "particular", "--depth", "12"]);
    let mut m: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    m["rows"][5][3] = Value::String("7".into());
    fs::write(&path, m.to_string()).unwrap();
    let report = dir.path().join("r.json");
    let (code, out, _) = run(&["verify", path.to_str().unwrap(), "--json-out", report.to_str().unwrap()]);
    assert_eq!(code, 2, "{out}");
    let r: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["status"], "fail");
    assert!(r["i"].is_u64() && r["j"].is_u64() && r["lhs"].is_string());
}

#[test]
fn forced_invalid_sequence_fails_verification() {
    let dir = TempDir::new().unwrap();
    let path = build_to(dir.path(), "bad.json", &["--variant", "bnl", "--a", "1", "--L", "2,4,7,10", "--depth", "12", "--force"]);
    let report = dir.path().join("r.json");
    let (code, _, _) = run(&[
        "verify",
        path.to_str().unwrap(),
        "--check",
        "fundamental,mtilde",
        "--a",
        "1",
        "--L",
        "2,4,7,10",
        "--json-out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    let r: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    // Condition (1) at k = L_2 + 1 = 5 is where the excess case breaks.
    assert_eq!(r["conditions"][1]["conditions"][0]["k"], 5);
}

#[test]
fn window_limited_exit_code() {
    let dir = TempDir::new().unwrap();
    let path = build_to(dir.path(), "p.json", &["--variant", "particular", "--depth", "10"]);
    let (code, out, _) = run(&["--depth", "20", "verify", path.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(out.contains("window-limited"));
}

#[test]
fn parse_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("junk.json");
    fs::write(&path, "{not json").unwrap();
    assert_eq!(run(&["verify", path.to_str().unwrap()]).0, 1);
    assert_eq!(run(&["build", "--variant", "ore", "--b", "x", "--c", "1"]).0, 1);
    assert_eq!(run(&["nonsense"]).0, 1);
    assert_eq!(run(&["seq", "--n", "1", "--count"]).0, 1);
}

#[test]
fn params_file_and_prime_field() {
    let dir = TempDir::new().unwrap();
    let params = dir.path().join("params.json");
    fs::write(&params, r#"{"variant":"ore","b":"2","c":"1/2","depth":6}"#).unwrap();
    let (code, out, _) = run(&["--field", "gf:7", "build", "--params", params.to_str().unwrap()]);
    assert_eq!(code, 0);
    let m: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(m["field"], "gf:7");
    assert_eq!(m["rows"][1][2], "4 mod 7");
}

#[test]
fn seq_examples() {
    let (code, out, _) = run(&["seq", "--n", "2", "--count", "--max-len", "10"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "length,count");
    assert_eq!(lines.len(), 11);
    assert_eq!(run(&["seq", "--n", "2", "--extend", "2,4,7"]).1.trim(), "[9]");
    let (code, out, _) = run(&["seq", "--n", "2", "--witness", "2,4,7,10"]);
    assert_eq!(code, 0);
    assert!(out.contains("case 2") && out.contains("(r,j)=(4,2)"), "{out}");
    let (code, _, err) = run(&["seq", "--n", "2", "--extend", "2,4,7,10"]);
    assert_eq!(code, 2);
    assert!(err.contains("Δ_{4,2} = 2"));
    assert_eq!(run(&["seq", "--n", "2", "--check", "2,4,6,9"]).0, 0);
    assert_eq!(run(&["seq", "--n", "3", "--generate", "--len", "4", "--policy", "n-plus-one"]).1.trim(), "[3,7,11,15]");
}

#[test]
fn roots_examples() {
    let (code, out, _) = run(&["roots", "q", "--b", "5/3", "--c", "1/9"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("n = 4"), "{out}");
    let (_, out, _) = run(&["roots", "r", "--a", "-4/3", "--d", "-1/3"]);
    assert!(out.starts_with("k = 4"), "{out}");
    let dir = TempDir::new().unwrap();
    let json = dir.path().join("r.json");
    let (_, out, _) = run(&["roots", "r", "--a", "1", "--d", "2", "--bound", "100", "--json-out", json.to_str().unwrap()]);
    assert!(out.starts_with("none") && out.contains("exhaustive"), "{out}");
    let r: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(r["index"], Value::Null);
    assert_eq!(run(&["roots", "q", "--b", "-1", "--c", "1"]).0, 2);
    assert_eq!(run(&["roots", "r", "--a", "0", "--d", "1"]).0, 2);
}

#[test]
fn outputs_are_byte_stable() {
    for args in [
        &["build", "--variant", "anda", "--n", "3", "--d", "1/2", "--a", "3"][..],
        &["seq", "--n", "3", "--enumerate", "--len", "7"][..],
        &["seq", "--n", "2", "--generate", "--len", "30", "--policy", "random:11"][..],
    ] {
        let first = twistmat().args(args).output().unwrap();
        let second = twistmat().args(args).output().unwrap();
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(first.stderr, second.stderr);
    }
}
