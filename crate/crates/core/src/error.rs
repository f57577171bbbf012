use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph has {0} vertices; at most 63 are supported")]
    TooManyVertices(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("vertex set {set:#x} is not contained in the vertex set of a graph on {n} vertices")]
    SetOutOfRange { set: u64, n: usize },

    #[error("vertex {0} must not lie in the prefix set")]
    VertexInPrefix(usize),

    #[error("sets overlap: {0:#x}")]
    Overlap(u64),

    #[error("vertex {0} does not appear in the ordering")]
    NotInOrdering(usize),

    #[error("ordering is not a permutation of the vertex set: {0}")]
    NotAPermutation(String),

    #[error("width table does not cover {0:#x}")]
    IncompleteTable(u64),

    #[error("index {index} out of range (domain size {size})")]
    IndexOutOfRange { index: u128, size: u128 },

    #[error("minimum finding over an empty domain")]
    EmptyDomain,

    #[error("binomial bound C({0}) overflows 64 bits")]
    BoundOverflow(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid layer chain: {0}")]
    InvalidLayers(String),

    #[error("{0} is not a union of connected components of G - chi")]
    NotComponentUnion(String),

    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },

    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
