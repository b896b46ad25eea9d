use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("order is not a permutation of 0..{expected}")]
    NotPermutation { expected: usize },

    #[error("malformed coloring: {0}")]
    MalformedColoring(String),

    #[error("{what} {size} exceeds the limit {limit}")]
    LimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("graph is not chordal: vertex {vertex} has non-adjacent later neighbors {u} and {v}")]
    NotChordal { vertex: usize, u: usize, v: usize },

    #[error("duplicate node id {0}")]
    DuplicateNode(u64),

    #[error("unknown node id {0}")]
    UnknownNode(u64),

    #[error("malformed scenario: {0}")]
    MalformedScenario(String),
}
