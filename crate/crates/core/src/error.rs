use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}{1}")]
    DuplicateEdge(usize, usize),
    #[error("{0} vertices exceeds the supported maximum")]
    TooManyVertices(usize),
    #[error("malformed graph6 header")]
    Graph6Header,
    #[error("graph6 data truncated: expected {expected} bytes, found {found}")]
    Graph6Truncated { expected: usize, found: usize },
    #[error("invalid graph6 byte {0:#04x}")]
    Graph6Byte(u8),
    #[error("enumeration bound exceeded: n = {n}, bound = {bound}")]
    EnumerationBound { n: usize, bound: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("power exponent must be at least 1")]
    ZeroPower,
    #[error("generator of degree {0} found; a colon graph needs quadratic generators")]
    NotQuadratic(u32),
    #[error("variable universes differ")]
    UniverseMismatch,
    #[error("edge {0} is not an edge of the graph")]
    ForeignEdge(crate::graph::Edge),
    #[error("edge multiset must be nonempty")]
    EmptyMultiset,
    #[error("vertex {0} is not an endpoint of a longest even-connection")]
    NotLongestEndpoint(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("regularity of the zero ideal is undefined")]
    ZeroIdeal,
    #[error("budget exceeded: {what} = {value} > {limit}")]
    Budget {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
