use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has {n} vertices, representation limit is {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("graph has {n} vertices, solver cap is {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {vertex} not allowed")]
    SelfLoop { vertex: usize },

    #[error("graph6 parse error: {0}")]
    Graph6(String),

    #[error("DIMACS parse error: {0}")]
    Dimacs(String),

    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),

    #[error("enumeration size {n} exceeds cap {cap}")]
    EnumerationCap { n: usize, cap: usize },

    #[error("rejection sampling exhausted {tries} tries without finding a member")]
    SamplingExhausted { tries: u64 },

    #[error("graph is not {{3K1, K1+C4}}-free: {0}")]
    NotMember(String),

    #[error("graph contains 3K1 at {0:?}; matching-based coloring requires independence number at most 2")]
    HasThreeK1([usize; 3]),

    #[error("operation undefined for the empty graph")]
    EmptyGraph,

    #[error("graph is complete: no non-adjacent pair exists")]
    CompleteGraph,

    #[error("chromatic engines disagree: branch-and-bound {bb}, matching {matching}")]
    EngineDisagreement { bb: usize, matching: usize },

    #[error("decomposition does not match graph: {0}")]
    DecompositionMismatch(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
