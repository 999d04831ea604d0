use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QtError {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid characteristic pair: a[{j}]*b[{i}] = {prod}, must be 0 or 2")]
    InvalidPair { i: usize, j: usize, prod: i64 },

    #[error("element of degree {degree} not representable in the canonical monomial span: {detail}")]
    NotRepresentable { degree: usize, detail: String },

    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, QtError>;
