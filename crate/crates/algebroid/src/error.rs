use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    /// A mathematical condition failed; `label` names the identity.
    #[error("{axiom} ({label}) failed: {witness}")]
    Rejected {
        axiom: String,
        label: String,
        witness: Value,
    },

    #[error("square roots of {0:?} are not in the configured field")]
    MissingRoots(Vec<u64>),
}

impl Error {
    pub fn rejected(axiom: &str, label: &str, witness: Value) -> Self {
        Error::Rejected {
            axiom: axiom.to_string(),
            label: label.to_string(),
            witness,
        }
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            Error::Rejected { label, .. } => Some(label),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
