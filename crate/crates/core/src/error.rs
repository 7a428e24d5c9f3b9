use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a numerical semigroup: {0}")]
    NotASemigroup(String),

    #[error("generators {0:?} have gcd {1} > 1 and no cap was given; the generated monoid is not cofinite")]
    NotCofinite(Vec<u32>, u32),

    #[error("offset {0} is not a right primitive element of the semigroup")]
    NotAPrimitive(u32),

    #[error("genus {genus} exceeds the supported maximum {max}")]
    GenusLimit { genus: u32, max: u32 },

    #[error("invalid Delgado parameter p = {0}: p must be an even positive integer")]
    InvalidP(u64),

    #[error("oracle bound exceeded: max genus {requested} is above the limit {limit}")]
    BoundExceeded { requested: u32, limit: u32 },

    #[error("invalid exploration config: {0}")]
    Config(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
