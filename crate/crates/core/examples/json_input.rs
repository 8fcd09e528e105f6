// Reading a hand-written input document and producing reports, both through
// the library and through the command-line entry point.

use std::error::Error;

use conequot::cli;
use conequot::io::parse_input;
use conequot::pipeline::{classify, Options};
use conequot::report::{validation_json, Report};

const DOCUMENT: &str = r#"{
  "schema_version": "1",
  "lattice_rank": 2,
  "mode": "suitable",
  "generators": [
    {"name": "x1", "degree": [1, 0]},
    {"name": "x2", "degree": [1, 0]},
    {"name": "y1", "degree": [0, 1]},
    {"name": "y2", "degree": [0, 1]},
    {"name": "z1", "degree": [1, 1]},
    {"name": "z2", "degree": [1, 1]}
  ],
  "metadata": {"description": "two copies of each degree"}
}"#;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let parsed = parse_input(DOCUMENT, true)?;
    let grading = parsed.document.to_grading();
    let cl = classify(&grading, Options::default())?;
    let report = Report::new("classify", parsed.document.clone(), validation_json(&cl.input, &parsed.warnings))
        .with_classification(&cl, &[]);
    print!("{}", report.to_text());
    let json: serde_json::Value = serde_json::from_str(&report.to_json())?;
    assert_eq!(json["command"], "classify");
    assert_eq!(json["embeddings"].as_array().map(Vec::len), Some(cl.embeddings.len()));

    // The same through the CLI, reading the bundled fixtures by name.
    let out = cli::run(["conequot", "--output", "text", "git-fan", "--fixture", "intro-ex1"]);
    print!("{}", out.stdout);
    assert_eq!(out.code, 0);
    let out = cli::run(["conequot", "classify", "--fixture", "no-such-fixture"]);
    assert_eq!(out.code, 2);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
