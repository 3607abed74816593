//! The crate-wide error type.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate index {index} out of range (must be < {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("bad matrix shape: {0}")]
    Shape(String),

    #[error("singular block: {0}")]
    Singular(String),

    #[error("vector {0} is not in the group")]
    NotInGroup(String),

    #[error("element does not belong to this algebra: {0}")]
    SpecMismatch(String),

    #[error("algebra has no Euler weighting sets")]
    MissingEulerSets,

    #[error("membership failure: {0}")]
    Membership(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid spec file: {0}")]
    SpecFile(String),

    #[error("unknown law `{law}` for family `{family}`")]
    UnknownLaw { law: String, family: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
