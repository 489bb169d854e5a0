use thiserror::Error;

/// Errors raised by the library.
///
/// Every variant maps to a stable machine-readable `kind` string via
/// [`Error::kind`], used by the CLI error payload.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word length {found} does not match expected length {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("{what} needs {needed} elements, exceeding the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("permutation of degree {found} cannot act on {expected} points")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("length {length} exceeds the supported limit of {limit}")]
    LengthTooLarge { length: usize, limit: usize },

    #[error("index {index} is outside 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("code is not doubly even: {0}")]
    NotDoublyEven(String),

    #[error("invalid chromotopology: {0}")]
    InvalidChromotopology(String),

    #[error("invalid ranking: {0}")]
    InvalidRanking(String),

    #[error("invalid dashing: {0}")]
    InvalidDashing(String),

    #[error("odd-dashing system is inconsistent")]
    NoDashing,

    #[error("cocycle system is inconsistent")]
    NoCocycle,

    #[error("element {0} is not in the loop")]
    ElementNotInLoop(String),

    #[error("colors must differ, got {0} twice")]
    SameColor(usize),

    #[error("dessin is not transitive")]
    NotTransitive,

    #[error("Euler characteristic {0} gives a non-integer or negative genus")]
    NonIntegerGenus(i64),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::LengthTooLarge { .. } => "LengthTooLarge",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotDoublyEven(_) => "NotDoublyEven",
            Error::InvalidChromotopology(_) => "InvalidChromotopology",
            Error::InvalidRanking(_) => "InvalidRanking",
            Error::InvalidDashing(_) => "InvalidDashing",
            Error::NoDashing => "NoDashing",
            Error::NoCocycle => "NoCocycle",
            Error::ElementNotInLoop(_) => "ElementNotInLoop",
            Error::SameColor(_) => "SameColor",
            Error::NotTransitive => "NotTransitive",
            Error::NonIntegerGenus(_) => "NonIntegerGenus",
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
