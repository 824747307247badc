use thiserror::Error;

use crate::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arc set contains a directed cycle through vertex {0}")]
    CycleDetected(Vertex),
    #[error("invalid arc {from} -> {to}: {reason}")]
    InvalidArc {
        from: Vertex,
        to: Vertex,
        reason: &'static str,
    },
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("universe mismatch: expected {expected} vertices, got {found}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("vertex set is empty")]
    EmptySet,
    #[error("digraph is not connected")]
    DisconnectedInput,
    #[error("digraph order {n} is below the required minimum {min}")]
    OrderTooSmall { n: usize, min: usize },
    #[error("digraph order {n} exceeds the enumeration cap {cap}")]
    OrderTooLarge { n: usize, cap: usize },
    #[error("set already contains every vertex")]
    FullSet,
    #[error("set is not a connected convex set")]
    NotConnectedConvex,
    #[error("report is empty")]
    EmptyReport,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}
