use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

use conequot::cli;
use conequot::fixtures;
use conequot::io::parse_input;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_conequot"));
    c.env_remove("CONEQUOT_MAX_OMEGA");
    c
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn manifest_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

const HYPERBOLIC: &str = r#"{"schema_version": "1", "lattice_rank": 1, "mode": "suitable",
  "generators": [{"name": "a", "degree": [1]}, {"name": "b", "degree": [-1]}]}"#;

#[test]
fn golden_reports() {
    let bless = std::env::var_os("CONEQUOT_BLESS").is_some();
    for name in fixtures::names() {
        // The full sl7 report is large; its collections report is kept instead.
        let (verb, file) = match name {
            "sl7" => ("collections", "sl7-collections".to_string()),
            _ => ("classify", name.to_string()),
        };
        let out = cli::run(["conequot", verb, "--fixture", name]);
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        let path = manifest_path(&format!("tests/golden/{file}.json"));
        if bless {
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap();
        assert!(out.stdout == expected, "{name} report differs from {}", path.display());
    }
}

#[test]
fn fixtures_verb_lists_all() {
    let out = cli::run(["conequot", "fixtures"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().count(), fixtures::names().len());
}

#[test]
fn reports_are_deterministic() {
    let a = cli::run(["conequot", "classify", "--fixture", "sl7"]);
    let b = cli::run(["conequot", "classify", "--fixture", "sl7"]);
    assert_eq!(a, b);
}

#[test]
fn input_is_echoed() {
    for name in fixtures::names() {
        let out = cli::run(["conequot", "orbit-cones", "--fixture", name]);
        let report: Value = serde_json::from_str(&out.stdout).unwrap();
        let echoed = serde_json::to_string(&report["input"]).unwrap();
        let again = parse_input(&echoed, true).unwrap().document;
        let original = parse_input(fixtures::fixture(name).unwrap(), true).unwrap().document;
        assert_eq!(again, original, "{name}");
    }
}

#[test]
fn every_verb_runs_on_stdin() {
    for verb in ["validate", "orbit-cones", "git-fan", "collections", "classify", "dot"] {
        let out = run_with_stdin(&[verb, "-"], HYPERBOLIC);
        assert!(out.status.success(), "{verb}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn text_output() {
    let out = cli::run(["conequot", "--output", "text", "collections", "--fixture", "hyperbolic"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("2-maximal collections (3):"), "{}", out.stdout);
}

#[test]
fn dot_output() {
    let out = cli::run(["conequot", "dot", "--fixture", "smoothemb"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("digraph morphisms {"));
    assert_eq!(out.stdout.matches(" -> ").count(), 2);
}

#[test]
fn explicit_mode_file() {
    let path = manifest_path("tests/inputs/explicit.json");
    let out = cli::run(["conequot", "classify", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let report: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(report["embeddings"].as_array().unwrap().len(), 1);
    assert_eq!(report["embeddings"][0]["locally_factorial"], true);
}

#[test]
fn usage_errors_exit_2() {
    let rank0 = HYPERBOLIC.replace("\"lattice_rank\": 1", "\"lattice_rank\": 0");
    let out = run_with_stdin(&["classify", "-"], &rank0);
    assert_eq!(out.status.code(), Some(2));

    let out = run_with_stdin(&["classify", "-"], "{\"schema_version\": ");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let out = cli::run(["conequot", "classify", "/no/such/file.json"]);
    assert_eq!(out.code, 2);
    let out = cli::run(["conequot", "frobnicate"]);
    assert_eq!(out.code, 2);
}

#[test]
fn failing_facet_condition_fails_validate() {
    let doc = r#"{"schema_version": "1", "lattice_rank": 1, "mode": "suitable",
      "generators": [{"name": "a", "degree": [1]}, {"name": "b", "degree": [2]}]}"#;
    let out = run_with_stdin(&["validate", "-"], doc);
    assert_eq!(out.status.code(), Some(2));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["validation"]["facet_condition"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn strict_mode_rejects_unknown_fields() {
    let doc = HYPERBOLIC.replace("\"mode\"", "\"colour\": 1, \"mode\"");
    let out = run_with_stdin(&["--strict", "validate", "-"], &doc);
    assert_eq!(out.status.code(), Some(2));
    let out = run_with_stdin(&["validate", "-"], &doc);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
}

#[test]
fn omega_cap_exits_3() {
    let out = bin()
        .args(["collections", "--fixture", "smoothemb"])
        .env("CONEQUOT_MAX_OMEGA", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = cli::run(["conequot", "--max-omega", "3", "classify", "--fixture", "smoothemb"]);
    assert_eq!(out.code, 3);
    let out = cli::run(["conequot", "--max-omega", "7", "classify", "--fixture", "smoothemb"]);
    assert_eq!(out.code, 0);
}

#[test]
fn unknown_fixture() {
    let out = cli::run(["conequot", "classify", "--fixture", "nope"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("hyperbolic"));
}
