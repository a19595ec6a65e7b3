use thiserror::Error;

/// Errors shared by every module of the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed graph6 input; `offset` is the byte position in the line.
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6Parse { offset: usize, message: String },

    /// Malformed edge-list input; `line` is 1-based.
    #[error("edge list parse error at line {line}: {message}")]
    EdgeListParse { line: usize, message: String },

    /// A generator or operation was called with infeasible parameters.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A vertex id outside 0..n was supplied.
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    /// An exponential search refused to run above its configured cap.
    /// Raise the cap explicitly to override; this is a refusal, not a failure.
    #[error("{op} refused: graph has {n} vertices, cap is {cap}")]
    CapExceeded {
        op: &'static str,
        n: usize,
        cap: usize,
    },

    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A guarantee that must hold failed at runtime. Indicates a bug in this
    /// crate, never a property of the input.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
