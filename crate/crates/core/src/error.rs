use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(usize),

    #[error("requested {requested} squares but at most {bound} are available")]
    CountExceedsBound { requested: usize, bound: usize },

    #[error(
        "cannot construct {requested} MOLS of order {order}: the MacNeish bound for this order is {bound}"
    )]
    UnsupportedOrder {
        order: usize,
        requested: usize,
        bound: usize,
    },

    #[error("TD({k},{n}) needs {needed} orthogonal squares, family has {available}")]
    InsufficientSquares {
        k: usize,
        n: usize,
        needed: usize,
        available: usize,
    },

    #[error("points ({group},{a}) and ({group},{b}) lie in the same group")]
    SameGroup { group: usize, a: usize, b: usize },

    #[error("point ({group},{index}) is outside the design")]
    PointOutOfRange { group: usize, index: usize },

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("pattern {pattern:?} is unsupported: no constructible TD(k,a_i) for parts {parts:?}")]
    UnsupportedPattern {
        pattern: Vec<usize>,
        /// 1-based part positions whose design could not be built.
        parts: Vec<usize>,
    },

    #[error("codeword out of range for the pattern")]
    InvalidCodeword,

    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),

    #[error("vertices {u} and {v} both lie in part {part}")]
    SamePart { part: usize, u: usize, v: usize },

    #[error("TD({k},{p}) is not constructible (MacNeish bound exceeded)")]
    UnsupportedP { k: usize, p: usize },

    #[error("no admissible blow-up factor found below {cap}")]
    SearchExhausted { cap: usize },

    #[error("part size {part_size} does not divide blow-up factor {p}")]
    DivisibilityViolation { part_size: usize, p: usize },

    #[error("no feasible parameters: {0}")]
    NoFeasibleParameters(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("no decomposition exists")]
    NoDecomposition,

    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    #[error("order {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("malformed input: {0}")]
    Malformed(String),
}
