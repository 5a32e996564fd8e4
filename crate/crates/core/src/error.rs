use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A numeric parameter fell outside the domain where the operation is defined.
    #[error("{name} = {value} is outside the domain {domain}")]
    Domain {
        name: &'static str,
        value: i64,
        domain: String,
    },

    #[error("pattern must be nonempty")]
    EmptyPattern,

    #[error("text must be nonempty")]
    EmptyText,

    #[error("occurrence ({start}, {end}) is not within a text of length {len}")]
    OutOfBounds { start: usize, end: usize, len: usize },

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("factorization does not flatten to the expected word")]
    NotAFactorization,

    #[error("boxplus requires both boundary factors to be flip(T_{order}), got {left} and {right}")]
    BoxplusMismatch {
        order: usize,
        left: String,
        right: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, value: impl TryInto<i64>, domain: impl Into<String>) -> Error {
    Error::Domain {
        name,
        value: value.try_into().unwrap_or(i64::MAX),
        domain: domain.into(),
    }
}
