use thiserror::Error;

/// Errors raised by the hypergraph engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("edge {0:?} appears more than once")]
    DuplicateEdge(Vec<String>),
    #[error("edge #{0} is empty")]
    EmptyEdge(usize),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge {contained:?} is contained in edge {container:?}")]
    AntichainViolation {
        contained: Vec<String>,
        container: Vec<String>,
    },
    #[error("at most {max} vertices are supported, got {got}")]
    TooManyVertices { max: usize, got: usize },
    #[error("vertices must be distinct")]
    SameVertex,
    #[error("cycle length must be at least 2, got {0}")]
    InvalidCycleLength(usize),
    #[error("hypergraph has no edges")]
    NoEdges,
    #[error("edge {0:?} is not an edge of the hypergraph")]
    UnknownEdge(Vec<String>),
    #[error("edge family contains a repeated edge")]
    RepeatedFamilyEdge,
    #[error("edge family is not a semi-induced matching")]
    NotSemiInduced,
    #[error("invalid bouquet: {0}")]
    InvalidBouquet(String),
    #[error("bouquet set is not semi-strongly disjoint")]
    NotSemiStronglyDisjoint,
    #[error("bouquet set has {got} flowers but the maximum is {expected}")]
    NotOptimalWitness { expected: usize, got: usize },
    #[error("search limit exceeded: {what} is {got}, limit {limit}")]
    SearchLimitExceeded {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("size limit exceeded: {what} is {got}, limit {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("cannot place {requested} edges under the antichain rule (placed {placed})")]
    Unsatisfiable { requested: usize, placed: usize },
    #[error("unknown filter `{0}`")]
    UnknownFilter(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid family spec: {0}")]
    InvalidFamily(String),
    #[error("invalid field `{0}`")]
    InvalidField(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by a configured search or size cap.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(
            self,
            Error::SearchLimitExceeded { .. } | Error::SizeLimitExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
