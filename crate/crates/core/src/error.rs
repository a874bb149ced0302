use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("not normalized: {0}")]
    NotNormalized(String),
    #[error("not a product object: {0}")]
    NotAProduct(String),
    #[error("unsupported by semiring {semiring}: {operation}")]
    Capability {
        semiring: &'static str,
        operation: &'static str,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no {0}")]
    UnknownName(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
