use std::io::{IsTerminal, Read};
use std::path::Path;

use algebroid::bialgebroid::StarStructure;
use algebroid::examples::{named_example, FiniteGroupoid};
use algebroid::io::{artifact_from_json, vec_from_json, Artifact};
use algebroid::{Error, Extension, Result, Scalar};
use serde_json::Value;

use crate::Options;

pub struct Instance {
    pub artifact: Artifact<Scalar>,
    pub star: Option<StarStructure<Scalar>>,
    pub ext: Extension,
}

fn read_path(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))
}

fn read_stdin() -> Result<String> {
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Invalid(format!("stdin: {e}")))?;
    Ok(s)
}

fn parse_json(text: &str, at: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Invalid(format!("{at}: line {} column {}: {e}", e.line(), e.column())))
}

pub fn groupoid(opts: &Options) -> Result<Option<FiniteGroupoid>> {
    opts.groupoid.as_ref().map(|p| FiniteGroupoid::parse(&read_path(p)?)).transpose()
}

pub fn extension(roots: &[u64]) -> Result<Extension> {
    Extension::new(roots).ok_or_else(|| Error::Invalid(format!("--sqrt values must be positive integers, got {roots:?}")))
}

fn from_example(name: &str, opts: &Options) -> Result<Instance> {
    let g = groupoid(opts)?;
    let ex = named_example::<Scalar>(name, g.as_ref())?;
    Ok(Instance {
        ext: extension(&opts.sqrt)?,
        star: ex.star,
        artifact: Artifact {
            mha: ex.mha,
            groupoid: ex.groupoid,
            integrals: Some(ex.integrals),
            mu: None,
            sqrt: opts.sqrt.clone(),
            recipe: None,
        },
    })
}

fn from_artifact(text: &str, at: &str, opts: &Options) -> Result<Instance> {
    let artifact = artifact_from_json::<Scalar>(&parse_json(text, at)?)?;
    let mut roots = artifact.sqrt.clone();
    roots.extend(&opts.sqrt);
    roots.sort_unstable();
    roots.dedup();
    Ok(Instance {
        ext: extension(&roots)?,
        star: StarStructure::of(&artifact.mha.a),
        artifact,
    })
}

/// `--input`, then `--example`, then an artifact piped on standard input,
/// then `default`.
pub fn load(opts: &Options, default: &str) -> Result<Instance> {
    if let Some(p) = &opts.input {
        return if p.as_os_str() == "-" { from_artifact(&read_stdin()?, "stdin", opts) } else { from_artifact(&read_path(p)?, &p.display().to_string(), opts) };
    }
    if let Some(name) = &opts.example {
        return from_example(name, opts);
    }
    if !std::io::stdin().is_terminal() {
        let text = read_stdin()?;
        if !text.trim().is_empty() {
            return from_artifact(&text, "stdin", opts);
        }
    }
    from_example(default, opts)
}

/// Comma-separated fractions, or a path to a JSON array of scalars.
pub fn values(s: &str, what: &str) -> Result<Vec<Scalar>> {
    let p = Path::new(s);
    if p.is_file() {
        let text = read_path(p)?;
        return vec_from_json(&parse_json(&text, s)?, what);
    }
    algebroid::io::parse_csv(s).map_err(|e| Error::Invalid(format!("{what}: {e}")))
}

/// `--mu`, else the weight stored in the artifact.
pub fn mu(inst: &Instance, opts: &Options) -> Result<Option<Vec<Scalar>>> {
    match &opts.mu {
        Some(s) => values(s, "--mu").map(Some),
        None => Ok(inst.artifact.mu.clone()),
    }
}
