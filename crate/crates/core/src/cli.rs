//! Command-line front end. The binary is a thin wrapper around [`run`].

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::collections::{Bunch, DEFAULT_MAX_OMEGA};
use crate::cone::Cone;
use crate::fixtures;
use crate::grading::{orbit_cones, validate};
use crate::git::git_fan;
use crate::io::{parse_input, InputDocument};
use crate::pipeline::{assess_bunch, classify, collections_stage, Options, PipelineError};
use crate::report::{
    collections_json, emit_dot, git_fan_json, orbit_cones_json, overlap_edges, validation_json, Report,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "conequot", version, about = "Classify small embeddings from a lattice grading")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub output: OutputFormat,
    /// Largest number of orbit cones accepted for collection enumeration.
    #[arg(long, global = true, env = "CONEQUOT_MAX_OMEGA")]
    pub max_omega: Option<usize>,
    /// Reject unknown fields in the input document.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the input and the facet condition.
    Validate(InputArgs),
    /// List the orbit cones.
    OrbitCones(InputArgs),
    /// Compute the GIT fan.
    GitFan(InputArgs),
    /// Enumerate the 2-maximal collections.
    Collections(InputArgs),
    /// Full classification with geometry and morphisms.
    Classify(InputArgs),
    /// Morphism poset as a DOT graph.
    Dot(InputArgs),
    /// List the bundled example inputs.
    Fixtures,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input document, or `-` for stdin.
    #[arg(required_unless_present = "fixture")]
    pub path: Option<PathBuf>,
    /// Use a bundled example instead of a file.
    #[arg(long, conflicts_with = "path")]
    pub fixture: Option<String>,
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

fn read_input(args: &InputArgs) -> Result<String, String> {
    if let Some(name) = &args.fixture {
        return fixtures::fixture(name)
            .map(str::to_string)
            .ok_or_else(|| format!("unknown fixture `{name}` (available: {})", fixtures::names().join(", ")));
    }
    let path = args.path.as_ref().expect("clap requires a path or a fixture");
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Text => report.to_text(),
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    let input_args = match &cli.command {
        Command::Fixtures => {
            let mut stdout = String::new();
            for n in fixtures::names() {
                stdout.push_str(n);
                stdout.push('\n');
            }
            return Outcome {
                code: 0,
                stdout,
                stderr: String::new(),
            };
        }
        Command::Validate(a)
        | Command::OrbitCones(a)
        | Command::GitFan(a)
        | Command::Collections(a)
        | Command::Classify(a)
        | Command::Dot(a) => a,
    };
    let text = match read_input(input_args) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(2, e),
    };
    let parsed = match parse_input(&text, cli.strict) {
        Ok(p) => p,
        Err(e) => return Outcome::fail(2, e),
    };
    let opts = Options {
        max_omega: cli.max_omega.unwrap_or(DEFAULT_MAX_OMEGA),
    };
    match dispatch(cli, parsed.document, parsed.warnings, opts) {
        Ok(o) => o,
        Err(e) => Outcome::fail(e.exit_code(), e),
    }
}

fn dispatch(
    cli: &Cli,
    doc: InputDocument,
    mut warnings: Vec<String>,
    opts: Options,
) -> Result<Outcome, PipelineError> {
    let grading = doc.to_grading();
    let v = validate(&grading)?;
    if !v.facet_condition_holds() {
        warnings.push("facet condition fails; bunch and geometry statements may not apply".into());
    }
    let ok = |report: Report| Outcome {
        code: 0,
        stdout: render(&report, cli.output),
        stderr: report.validation.warnings.iter().map(|w| format!("warning: {w}\n")).collect(),
    };
    match &cli.command {
        Command::Validate(_) => {
            let facets_ok = v.facet_condition_holds();
            let report = Report::new("validate", doc, validation_json(&v, &warnings));
            let mut out = ok(report);
            if !facets_ok {
                out.code = 2;
            }
            Ok(out)
        }
        Command::OrbitCones(_) => {
            let omega = orbit_cones(&v)?;
            warnings.extend(omega.warnings().iter().cloned());
            let mut report = Report::new("orbit-cones", doc, validation_json(&v, &warnings));
            report.orbit_cones = Some(orbit_cones_json(&v, &omega));
            Ok(ok(report))
        }
        Command::GitFan(_) => {
            let omega = orbit_cones(&v)?;
            warnings.extend(omega.warnings().iter().cloned());
            let fan = git_fan(&omega)?;
            let mut report = Report::new("git-fan", doc, validation_json(&v, &warnings));
            report.orbit_cones = Some(orbit_cones_json(&v, &omega));
            report.git_fan = Some(git_fan_json(&fan));
            Ok(ok(report))
        }
        Command::Collections(_) => {
            let (omega, fan, cs, pointed) = collections_stage(&v, opts)?;
            warnings.extend(omega.warnings().iter().cloned());
            let mut report = Report::new("collections", doc, validation_json(&v, &warnings));
            report.pointed = Some(pointed);
            report.orbit_cones = Some(orbit_cones_json(&v, &omega));
            report.git_fan = Some(git_fan_json(&fan));
            report.overlap_edges = Some(overlap_edges(&omega));
            report.collections = Some(collections_json(&cs));
            Ok(ok(report))
        }
        Command::Classify(_) | Command::Dot(_) => {
            let cl = classify(&grading, opts)?;
            warnings.extend(cl.omega.warnings().iter().cloned());
            if let Command::Dot(_) = cli.command {
                return Ok(Outcome {
                    code: 0,
                    stdout: emit_dot(&cl.poset, &cl.embeddings),
                    stderr: warnings.iter().map(|w| format!("warning: {w}\n")).collect(),
                });
            }
            let declared = doc
                .declared_bunches()
                .map_err(|e| PipelineError::Input(e.to_string()))?
                .into_iter()
                .map(|(name, cones)| {
                    let bunch = Bunch::new(cones.iter().map(|gens| Cone::from_generators(v.rank(), gens)));
                    assess_bunch(&cl, &name, bunch)
                })
                .collect::<Vec<_>>();
            let report =
                Report::new("classify", doc, validation_json(&v, &warnings)).with_classification(&cl, &declared);
            Ok(ok(report))
        }
        Command::Fixtures => unreachable!("handled before parsing input"),
    }
}
