use thiserror::Error;

use crate::complex::{Face, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("{0} is not a face of the complex")]
    NotAFace(Face),

    #[error("vertex sets overlap at {0}")]
    LabelCollision(VertexId),

    #[error("vertex {0} is already present")]
    VertexExists(VertexId),

    #[error("{0} is not an edge of the complex")]
    NotAnEdge(Face),

    #[error("vertex {vertex} cannot be removed by an inverse edge subdivision: {reason}")]
    NotInvertible { vertex: VertexId, reason: String },

    #[error("complex is not pure")]
    NotPure,

    #[error("h-vector is not symmetric, complex is not a sphere: {0:?}")]
    NotASphere(Vec<i64>),

    #[error("plan step {step} is invalid: {reason}")]
    InvalidPlan { step: usize, reason: String },

    #[error("invalid move sequence at position {index}: {reason}")]
    InvalidSequence { index: usize, reason: String },

    #[error("wrong replacement case: {0}")]
    WrongCase(String),

    #[error("gadget precondition failed: {0}")]
    Gadget(String),

    #[error("sequence endpoints must be flag complexes")]
    NonFlagEndpoints,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Error {
        Error::Io(e.to_string())
    }
}
