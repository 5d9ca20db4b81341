use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("edge {edge} has endpoint {vertex} but the graph has {vertex_count} vertices")]
    EndpointOutOfRange {
        edge: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("{what} is too large: {size} exceeds the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("bad rotation at vertex {vertex}: {reason}")]
    BadRotation { vertex: usize, reason: String },
    #[error("no sign given for edge {edge}")]
    MissingSign { edge: usize },
    #[error("{found} signs given for {expected} edges")]
    ExtraSigns { expected: usize, found: usize },
    #[error("vertex {vertex} is out of range")]
    VertexOutOfRange { vertex: usize },
    #[error("graph is not its own cyclic part: vertex {vertex} has degree 1")]
    NotCyclicPart { vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("edge {edge} is a loop and cannot be contracted")]
    LoopContraction { edge: usize },
    #[error("edge {edge} is switched; flip one of its endpoints before contracting")]
    SwitchedContraction { edge: usize },
    #[error("vertex {vertex} has degree {degree}; expansion needs degree > 3")]
    DegreeTooSmall { vertex: usize, degree: usize },
    #[error("tree shape has {found} leaves, expected {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("edge {edge} is out of range")]
    EdgeOutOfRange { edge: usize },
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("search space of {needed} schemes exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("cycle rank {q} exceeds the configured cap of {cap}")]
    RankTooLarge { q: usize, cap: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// Parse failure with a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Umbrella error for callers that mix operations from several modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
