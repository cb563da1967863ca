use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on an input value does not hold.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configured enumeration bound would be exceeded.
    #[error("{what}: size {size} exceeds the bound {bound}")]
    SizeBound {
        what: &'static str,
        size: u128,
        bound: u128,
    },

    /// An element or subgroup does not belong to the group it was used with.
    #[error("not a member of the parent group: {0}")]
    NotInGroup(String),

    /// Two operands live in different parent structures.
    #[error("operands belong to different parents")]
    MixedParents,

    /// Parse failure in a data file or inline group description.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// Lookup of a catalog name failed.
    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    /// I/O failure while reading data or writing caches.
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
