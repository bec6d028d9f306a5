use thiserror::Error;

/// Errors produced by parsers, validators and the bijections.
///
/// Every variant has a stable machine-readable [`code`](Error::code); the
/// `Display` text names the violated invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("PARSE: {what}: {message}")]
    Parse { what: &'static str, message: String },

    #[error("EMPTY: operation requires a nonempty sequence")]
    Empty,

    #[error("NOT_ENDOFUNCTION: entry {value} at position {position} exceeds the length {len}")]
    NotEndofunction {
        position: usize,
        value: u32,
        len: usize,
    },

    #[error("NOT_CAYLEY: value {missing} is missing below the maximum {max}")]
    NotCayley { missing: u32, max: u32 },

    #[error("NOT_MODASC: {0}")]
    NotModasc(String),

    #[error("NOT_ENDOTREE: {0}")]
    NotEndotree(String),

    #[error("NOT_FISHBURN: {0}")]
    NotFishburn(String),

    #[error("INVALID_COVER: {0}")]
    InvalidCover(String),

    #[error("INVALID_BURGE: {0}")]
    InvalidBurge(String),

    #[error("INVALID_MATRIX: {0}")]
    InvalidMatrix(String),

    #[error("INVALID_POSET: {0}")]
    InvalidPoset(String),

    #[error("NOT_A_PARTIAL_ORDER: {0}")]
    NotAPartialOrder(String),

    /// `first` and `second` have incomparable strict down-sets; together with
    /// one element below each they induce a copy of 2+2.
    #[error(
        "NOT_TWO_PLUS_TWO_FREE: strict down-sets of elements {first} and {second} are \
         incomparable, so the poset contains an induced 2+2"
    )]
    NotTwoPlusTwoFree { first: usize, second: usize },

    #[error("OVERFLOW: {0}")]
    Overflow(String),

    #[error(
        "LIMIT_EXCEEDED: {kind} enumeration is capped at n = {cap}, requested n = {requested}"
    )]
    LimitExceeded {
        kind: &'static str,
        requested: usize,
        cap: usize,
    },
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "PARSE",
            Error::Empty => "EMPTY",
            Error::NotEndofunction { .. } => "NOT_ENDOFUNCTION",
            Error::NotCayley { .. } => "NOT_CAYLEY",
            Error::NotModasc(_) => "NOT_MODASC",
            Error::NotEndotree(_) => "NOT_ENDOTREE",
            Error::NotFishburn(_) => "NOT_FISHBURN",
            Error::InvalidCover(_) => "INVALID_COVER",
            Error::InvalidBurge(_) => "INVALID_BURGE",
            Error::InvalidMatrix(_) => "INVALID_MATRIX",
            Error::InvalidPoset(_) => "INVALID_POSET",
            Error::NotAPartialOrder(_) => "NOT_A_PARTIAL_ORDER",
            Error::NotTwoPlusTwoFree { .. } => "NOT_TWO_PLUS_TWO_FREE",
            Error::Overflow(_) => "OVERFLOW",
            Error::LimitExceeded { .. } => "LIMIT_EXCEEDED",
        }
    }

    pub(crate) fn parse(what: &'static str, message: impl Into<String>) -> Self {
        Error::Parse {
            what,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
