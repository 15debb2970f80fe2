use thiserror::Error;

use crate::hypergraph::Vertex;

/// Errors raised by every fallible operation in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("uniformity k={k} must be at least 2")]
    UniformityTooSmall { k: usize },
    #[error("uniformity k={k} exceeds vertex count n={n}")]
    UniformityExceedsOrder { n: usize, k: usize },
    #[error("operation requires a 3-uniform hypergraph, got k={k}")]
    NotThreeUniform { k: usize },
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("edge {edge:?} has {got} vertices, expected {k}")]
    WrongArity { edge: Vec<Vertex>, got: usize, k: usize },
    #[error("edge {edge:?} repeats vertex {vertex}")]
    RepeatedVertex { edge: Vec<Vertex>, vertex: Vertex },
    #[error("vertices must be distinct, got {0} twice")]
    SameVertex(Vertex),
    #[error("scope violation: {0}")]
    ScopeOverlap(String),
    #[error("partition blocks overlap at vertex {0}")]
    PartitionOverlap(Vertex),
    #[error("vertex {0} lies outside every partition block")]
    OutsidePartition(Vertex),
    #[error("n={n} must be divisible by {divisor}")]
    Divisibility { n: usize, divisor: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("edge {0:?} is not an edge of the host hypergraph")]
    NotAnEdge(Vec<Vertex>),
    #[error("matching edges {0:?} and {1:?} intersect")]
    MatchingOverlap(Vec<Vertex>, Vec<Vertex>),
    #[error("matching belongs to a host with (n, k) = ({0}, {1})")]
    HostMismatch(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("replacement would uncover W-vertex {0}")]
    UncoversWVertex(Vertex),
    #[error("graphs live on different vertex sets ({0} vs {1} vertices)")]
    VertexSetMismatch(usize, usize),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
