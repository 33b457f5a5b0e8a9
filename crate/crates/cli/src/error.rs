use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] persdgm::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{0}")]
    Usage(String),
    /// A stability trial contradicted a theorem.
    #[error("{0} trial(s) violated a stability theorem")]
    Violation(usize),
}

impl CliError {
    /// 1 for theorem violations, 3 for missing type B groups or non-split
    /// characteristic polynomials, 2 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Library(
                persdgm::Error::NoBGroup { .. } | persdgm::Error::NonSplit { .. },
            ) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
