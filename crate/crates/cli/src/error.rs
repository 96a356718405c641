use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}: {msg}")]
    Json { path: PathBuf, msg: String },

    #[error("{path}: field {field}: {msg}")]
    Schema { path: PathBuf, field: String, msg: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] gimel_core::Error),

    #[error("{0}")]
    PropertyFailed(String),
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: &'a str,
    message: String,
    exit_code: i32,
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        use gimel_core::Error as E;
        match self {
            CliError::Io { .. } => "io",
            CliError::Json { .. } => "json",
            CliError::Schema { .. } => "schema",
            CliError::Usage(_) => "usage",
            CliError::PropertyFailed(_) => "property",
            CliError::Core(e) => match e {
                E::Parse { .. } => "parse",
                E::VariableOutOfRange { .. } => "variable_out_of_range",
                E::ContextMismatch(_) => "context_mismatch",
                E::UndefinedDegree => "undefined_degree",
                E::DegreeMismatch { .. } => "degree_mismatch",
                E::InvalidRoot(_) => "invalid_root",
                E::Shape(_) => "shape",
                E::Validation(_) => "validation",
                E::Decomposition(_) => "decomposition",
                E::Nondegeneracy(_) => "nondegeneracy",
                E::PotentialShape(_) => "potential_shape",
                E::InvalidDiagram(_) => "invalid_diagram",
                E::Unsupported(_) => "unsupported",
                E::Internal(_) => "internal",
            },
        }
    }

    /// 1 for I/O and parse errors, 2 for validation failures, 3 for
    /// nondegeneracy and decomposition failures.
    pub fn exit_code(&self) -> i32 {
        use gimel_core::Error as E;
        match self {
            CliError::Io { .. } | CliError::Json { .. } | CliError::Schema { .. } | CliError::Usage(_) => 1,
            CliError::Core(E::Parse { .. }) => 1,
            CliError::Core(E::Decomposition(_) | E::Nondegeneracy(_) | E::Internal(_)) => 3,
            CliError::Core(_) | CliError::PropertyFailed(_) => 2,
        }
    }

    pub fn to_json(&self) -> String {
        let e = ErrorJson { error: self.kind(), message: self.to_string(), exit_code: self.exit_code() };
        serde_json::to_string(&e).expect("error serializes")
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn read(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub(crate) fn write(path: &std::path::Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}
