//! Command-line front end: build instances, verify them, compute integrals
//! and modular data, and apply modifiers. Reports are JSON lines closed by a
//! summary object.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use algebroid::{Error, Report};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Recipe {
    #[value(name = "identity")]
    Identity,
    #[value(name = "inner")]
    Inner,
    #[value(name = "groupoid_rn")]
    GroupoidRn,
    #[value(name = "crossed_rn")]
    CrossedRn,
}

#[derive(clap::Args, Debug, Default, Clone)]
pub struct Options {
    /// Named example (function-algebroid, convolution, tensor, crossed-product, two-sided, group-algebra).
    #[arg(long, global = true)]
    pub example: Option<String>,
    /// Groupoid JSON for the groupoid examples.
    #[arg(long, global = true)]
    pub groupoid: Option<PathBuf>,
    /// Artifact from `build` or `modify`; `-` reads standard input.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Base weight as comma-separated fractions, or a path to a JSON array.
    #[arg(long, global = true)]
    pub mu: Option<String>,
    #[arg(long, value_enum, global = true)]
    pub recipe: Option<Recipe>,
    /// Adjoin √d to the scalar field (repeatable).
    #[arg(long, global = true)]
    pub sqrt: Vec<u64>,
    /// Base coordinates of `u` for the inner recipe.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub u: Option<String>,
    /// Base coordinates of `v` for the inner recipe.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub v: Option<String>,
    /// Write the report (or, for build and modify, the artifact) here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Parser, Debug)]
#[command(name = "algebroid", version, about = "Exact computations with finite multiplier Hopf algebroids")]
struct Args {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    options: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmd {
    /// Construct an instance and write it as an artifact.
    Build,
    /// Run the algebroid axiom suite.
    Verify,
    /// Solve for partial integrals and check the supplied ones.
    Integrals,
    /// Check a base weight and assemble the measured algebroid.
    Measure,
    /// Apply a modifier recipe and write the modified artifact.
    Modify,
    /// Compute the dual algebra.
    Dual,
    /// Axioms, measured structure and structure theory together.
    Report,
}

/// What a command produced.
pub struct Outcome {
    pub report: Report,
    /// Serialized artifact for `build` and `modify`.
    pub artifact: Option<serde_json::Value>,
}

fn write_out(path: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = commands::run(args.command, &args.options);
    match result {
        Ok(out) => {
            let lines = out.report.to_json_lines();
            let written = match out.artifact {
                Some(a) => {
                    let text = format!("{a}\n");
                    match &args.options.out {
                        Some(_) => write_out(&args.options.out, &text).and_then(|_| std::io::stdout().write_all(lines.as_bytes())),
                        None => std::io::stderr().write_all(lines.as_bytes()).and_then(|_| std::io::stdout().write_all(text.as_bytes())),
                    }
                }
                None => write_out(&args.options.out, &lines),
            };
            if let Err(e) = written {
                eprintln!("{}", json!({ "error": format!("writing output: {e}") }));
                return ExitCode::from(2);
            }
            if out.report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            if code == 1 {
                let mut r = Report::new();
                match &e {
                    Error::Rejected { axiom, label, witness } => r.fail(axiom, label, witness.clone()),
                    Error::MissingRoots(ds) => {
                        r.fail("square roots of the Radon-Nikodym cocycle", "radon-nikodym-cocycle", json!({ "missing": ds }));
                        let flags: Vec<String> = ds.iter().map(|d| format!("--sqrt {d}")).collect();
                        r.note_last(&format!("rerun with {}", flags.join(" ")));
                    }
                    _ => unreachable!("exit code 1 is only used for rejections"),
                }
                let _ = write_out(&args.options.out, &r.to_json_lines());
            } else {
                eprintln!("{}", json!({ "error": e.to_string() }));
            }
            ExitCode::from(code)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Rejected { .. } | Error::MissingRoots(_) => 1,
        Error::Dimension(_) | Error::Invalid(_) => 2,
    }
}
