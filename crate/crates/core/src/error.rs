use thiserror::Error;

/// Errors produced by the root, weight, multiplicity and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}: {constraint}")]
    InvalidRank {
        family: char,
        rank: usize,
        constraint: &'static str,
    },

    #[error("unknown type label `{0}`")]
    UnknownType(String),

    #[error("twisted affine types are not supported: `{0}`")]
    Twisted(String),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("not a positive root: {0}")]
    NotPositiveRoot(String),

    #[error("weight is not integral: {0}")]
    NotIntegral(String),

    #[error("weight is not dominant: {0}")]
    NotDominant(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("level mismatch: expected {expected}, got {got}")]
    LevelMismatch { expected: i64, got: i64 },

    #[error(
        "window insufficient: multiplicity table depth {required} needed, limit is {available}; \
         raise the table depth limit"
    )]
    WindowInsufficient { required: u32, available: u32 },

    #[error("not a Wahl triple: {0}")]
    NotWahl(String),

    #[error("weight is not S-regular for S = {0}")]
    NotSRegular(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
