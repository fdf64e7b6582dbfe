//! Crate-wide error type.  Contract violations are reported as values, not
//! panics, so the CLI can map them onto exit codes.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph on {0} vertices exceeds the {max}-vertex limit", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("parse error at line {line}: {msg}")]
    ParseAt { line: usize, msg: String },

    #[error("{op} supports at most {limit} vertices, got {n}")]
    SizeGuard {
        op: &'static str,
        limit: usize,
        n: usize,
    },

    #[error("vertex sets overlap on vertex {0}")]
    OverlappingSets(usize),

    #[error("{0}")]
    BadPatternParameter(String),

    #[error("input graph is outside the required class: contains {pattern} on {witness:?}")]
    OutsideClass {
        pattern: String,
        witness: Vec<usize>,
    },

    #[error("coloring has {got} entries for a graph on {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("bad trace: {0}")]
    BadTrace(String),

    #[error("counterexample candidate: {detail} (graph6 {graph6})")]
    Counterexample { graph6: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
