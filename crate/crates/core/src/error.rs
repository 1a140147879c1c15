use thiserror::Error;

/// Errors raised by the algebra, classification and parsing layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient mismatch: ring with {left} variables vs ring with {right} variables")]
    AmbientMismatch { left: usize, right: usize },

    #[error("exponent overflow while combining monomials")]
    ExponentOverflow,

    #[error("generator limit exceeded: intermediate ideal has more than {limit} generators")]
    GeneratorLimit { limit: usize },

    #[error("variable index {index} is out of range for a ring with {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not a support-2 ideal: generator {generator} has support of size {support}")]
    NotSupport2 { generator: String, support: usize },

    #[error("graph has {n} vertices, above the vertex-cover enumeration bound of {bound}")]
    CoverBound { n: usize, bound: usize },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid json ideal: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
