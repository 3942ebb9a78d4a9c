use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty coding")]
    Empty,
    #[error("letter {letter} appears {count} times (expected exactly twice)")]
    LetterCount { letter: String, count: usize },
    #[error("both occurrences of {letter} carry the same bar (non-orientable gluing)")]
    SameOrientation { letter: String },
    #[error("unrecognized token {0:?}")]
    BadToken(String),
    #[error("edge {edge} does not occur in a coding with {edge_count} edges")]
    EdgeNotPresent { edge: usize, edge_count: usize },
    #[error("oriented edges {x} and {y} lie on the same edge")]
    SelfPair { x: String, y: String },
    #[error("{x} and {y} are not intertwined: no rotation reads {x} w {xb} w {y} w {yb} or {x} w {yb} w {y} w {xb}")]
    NotIntertwined {
        x: String,
        xb: String,
        y: String,
        yb: String,
    },
    #[error("degree partition {degrees:?} is inconsistent with genus {genus}: need sum(d) = 2|V| + 4g - 2")]
    InconsistentPartition { genus: usize, degrees: Vec<usize> },
    #[error(
        "word length {length} exceeds the enumeration cap of {cap}; build the surgery graph by BFS closure from a seed instead (graph --mode bfs)"
    )]
    Infeasible { length: usize, cap: usize },
    #[error("vertex of degree {degree} present, but every vertex must be {required}")]
    WrongDegree {
        degree: usize,
        required: &'static str,
    },
    #[error(
        "seed has genus {genus} and degrees {degrees:?}, which do not match the requested graph"
    )]
    SeedMismatch { genus: usize, degrees: Vec<usize> },
    #[error("breadth-first closure needs a seed coding")]
    MissingSeed,
    #[error("ribbon graph is disconnected")]
    Disconnected,
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("intersection form has rank {rank}, expected {expected}")]
    Degenerate { rank: usize, expected: usize },
    #[error("transvection class must be nonzero")]
    ZeroClass,
    #[error("class {0} lies outside span{{x1, x2, y2, ..., xg, yg}}")]
    OutsideAllowedSpan(String),
    #[error("group closure exceeded the budget of {0} elements")]
    BudgetExceeded(usize),
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("vector is not primitive (gcd of coordinates is {0})")]
    NotPrimitive(String),
    #[error("vector is not congruent to x1 mod 2")]
    WrongParity,
    #[error("genus {0} is too small for this operation")]
    GenusTooSmall(usize),
    #[error("malformed move: {0}")]
    MalformedMove(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
