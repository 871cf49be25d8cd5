use thiserror::Error;

use crate::recognizer::RecognitionTrace;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input (line {line}): {msg}")]
    MalformedInput { line: usize, msg: String },

    #[error("graph is not bipartite: odd cycle through vertex {0}")]
    NotBipartite(usize),

    #[error("edge {0}-{1} joins two vertices of the same color")]
    ColorConflict(usize, usize),

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("interval model failed validation")]
    ModelValidationFailed,

    #[error("pair ({0},{1}) is not in the relation")]
    UnknownPair(usize, usize),

    #[error("instance too large: n = {n} exceeds limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("relation is not total: neither ({0},{1}) nor ({1},{0}) present")]
    NotTotal(usize, usize),

    #[error("relation is not transitive around ({0},{1},{2})")]
    NotTransitive(usize, usize, usize),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("internal inconsistency: {reason}")]
    InternalInconsistency {
        reason: String,
        trace: Box<RecognitionTrace>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn malformed(line: usize, msg: impl Into<String>) -> Self {
        Error::MalformedInput {
            line,
            msg: msg.into(),
        }
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InternalInconsistency { .. })
    }
}
