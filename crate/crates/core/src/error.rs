use thiserror::Error;

/// Errors raised by tree construction, the matching procedures, the
/// compositions and the oracle.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("empty tree description")]
    Empty,
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph has a cycle: {edges} edges on {n} vertices")]
    Cyclic { edges: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertex {0} is not an end vertex of a longest path")]
    NotLongestPathEndpoint(usize),
    #[error("labeling has order {labeling}, tree has order {tree}")]
    OrderMismatch { labeling: usize, tree: usize },
    #[error("label {label} on vertex {vertex} is out of range 0..{n}")]
    LabelOutOfRange { vertex: usize, label: usize, n: usize },
    #[error("labeling is not graceful: {0}")]
    NotGraceful(String),

    #[error("{0} is not an edge of the tree")]
    NotAnEdge(String),
    #[error("matching covers vertex {0} twice")]
    MatchingOverlap(usize),
    #[error("matching is not perfect")]
    NotPerfect,
    #[error("tree has no almost perfect matching")]
    NoAlmostPerfectMatching,
    #[error("no almost perfect matching leaves vertex {0} uncovered")]
    NoMatchingMissing(usize),
    #[error("no almost perfect matching leaves a leaf uncovered")]
    NoUsableMatching,
    #[error("tree has no perfect matching")]
    NoPerfectMatching,
    #[error("internal defect: {0}")]
    Defect(String),

    #[error("tree is not a caterpillar")]
    NotCaterpillar,
    #[error("contree is not a caterpillar")]
    ContreeNotCaterpillar,
    #[error("image of the uncovered vertex is not a longest-path end vertex of the contree")]
    ImageNotEndpoint,
    #[error("contree has no graceful labeling with 0 on vertex {0}")]
    NoZeroLabeling(usize),
    #[error("vertex {0} is not a leaf")]
    NotALeaf(usize),
    #[error("attachment plan has no vertex for edge {0}-{1}")]
    PlanIncomplete(usize, usize),
    #[error("composition precondition violated: {0}")]
    Precondition(String),

    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("order {n} exceeds the supported bound {max}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("no tree found after {0} attempts")]
    AttemptsExceeded(usize),
    #[error("invalid generator request: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
