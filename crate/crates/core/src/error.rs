use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge id {0}")]
    UnknownEdge(usize),

    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(usize),

    #[error("edge ids are not dense: missing id {0}")]
    SparseEdgeIds(usize),

    /// A size guard refused the input. Set `SIGNFORGE_GUARD_OVERRIDE=1` to lift it.
    #[error("{what}: size {actual} exceeds the guard of {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("cycle enumeration exceeded the cap of {cap} cycles")]
    CycleCapExceeded { cap: usize },

    #[error("not a cycle: {0}")]
    NotACycle(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed rotation system: {0}")]
    MalformedRotation(String),

    #[error("embedding is not planar: n - m + f = {characteristic}, expected {expected}")]
    EulerViolation { characteristic: i64, expected: i64 },

    #[error("unknown catalog entry `{name}`; candidates: {}", candidates.join(", "))]
    UnknownCatalogEntry { name: String, candidates: Vec<String> },
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::GuardExceeded { .. } | Error::CycleCapExceeded { .. }
        )
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
