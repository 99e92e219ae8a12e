use thiserror::Error;

/// What is wrong with a single edge record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeFault {
    SelfLoop,
    Duplicate,
    VertexOutOfRange,
    ZeroWeight,
}

impl std::fmt::Display for EdgeFault {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EdgeFault::SelfLoop => "self-loop",
            EdgeFault::Duplicate => "duplicate edge",
            EdgeFault::VertexOutOfRange => "vertex id out of range",
            EdgeFault::ZeroWeight => "weight must be at least 1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge #{index} ({u}, {v}): {fault}")]
    InvalidEdge {
        index: usize,
        u: usize,
        v: usize,
        fault: EdgeFault,
    },

    #[error("graph is not connected")]
    Disconnected,

    #[error("unsupported input: {0}")]
    Unsupported(&'static str),

    #[error("shortest-path count exceeds the 64-bit range")]
    Overflow,

    #[error("oracle cap exceeded: {0}")]
    OracleCap(String),

    #[error("sampling did not certify every source within {rounds} rounds")]
    RoundsExhausted { rounds: usize },

    #[error("inconsistent forward-pass result: {0}")]
    Inconsistent(String),

    #[error("matrix dimensions differ ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("division of nonzero entry by zero at ({row}, {col})")]
    DivisionByZero { row: usize, col: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
