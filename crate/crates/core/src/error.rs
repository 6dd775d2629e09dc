use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The hidden graph does not have the shape an algorithm relies on
    /// (for example, a non-outerplanar input handed to the outerplanar driver).
    #[error("structural error: {0}")]
    Structural(String),

    /// A randomized loop ran past its safety cap. Rerunning with another seed
    /// normally succeeds.
    #[error("iteration cap exceeded: {0}")]
    IterationCap(String),

    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),

    #[error("enumeration refused: {0}")]
    EnumerationCap(String),

    /// An exact reconstruction disagreed with the hidden graph.
    #[error("incorrect reconstruction: {0}")]
    Incorrect(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors that stem from the input graph or its validation, as opposed to
    /// I/O failures.
    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            Error::Disconnected
                | Error::InvalidGraph(_)
                | Error::Parse { .. }
                | Error::Structural(_)
                | Error::IterationCap(_)
                | Error::Infeasible(_)
                | Error::InvalidArgument(_)
                | Error::VertexOutOfRange { .. }
        )
    }
}
