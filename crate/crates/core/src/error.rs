use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("relation is not reflexive at {0}")]
    NotReflexive(String),

    #[error("antisymmetry violated by ({0}, {1})")]
    NotAntisymmetric(String, String),

    #[error("transitivity violated by ({0}, {1}, {2})")]
    NotTransitive(String, String, String),

    #[error("unknown element label {0:?}")]
    UnknownLabel(String),

    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),

    #[error("{what} exceeds cap {limit} (reached {reached})")]
    CapExceeded {
        what: String,
        limit: usize,
        reached: usize,
    },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("not a Scott closed set: {0}")]
    NotClosed(String),

    #[error("not an irreducible closed set: {0}")]
    NotIrreducible(String),

    #[error("map is not monotone: {0}")]
    NotMonotone(String),

    #[error("malformed chain descriptor: {0}")]
    MalformedChain(String),

    #[error("candidate is not an upper bound: {0}")]
    NotAnUpperBound(String),

    #[error("family is not directed: {0}")]
    NotDirected(String),

    #[error("family precondition violated: {0}")]
    Precondition(String),

    #[error("unrepresentable: {0}")]
    Unrepresentable(String),

    #[error("unknown structure {0:?}")]
    UnknownStructure(String),
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            column,
            message: message.into(),
        }
    }

    pub(crate) fn cap(what: impl Into<String>, limit: usize, reached: usize) -> Self {
        Error::CapExceeded {
            what: what.into(),
            limit,
            reached,
        }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
