use thiserror::Error;

/// Errors raised by the algebra, diagram and invariant engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input at offset {pos} in {input:?}: {msg}")]
    Parse { input: String, pos: usize, msg: String },

    #[error("variable {var} is out of range for n = {n}")]
    VariableOutOfRange { var: String, n: usize },

    #[error("ring context mismatch: {0}")]
    ContextMismatch(String),

    #[error("quantum degree of the zero polynomial is undefined")]
    UndefinedDegree,

    #[error("potential has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid root: {0}")]
    InvalidRoot(String),

    #[error("malformed complex: {0}")]
    Shape(String),

    #[error("complex failed validation: {0}")]
    Validation(String),

    #[error("decomposition failure: {0}")]
    Decomposition(String),

    #[error("degenerate Gornik class: {0}")]
    Nondegeneracy(String),

    #[error("potential must be x^n - x^(n-1) for this computation: {0}")]
    PotentialShape(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
