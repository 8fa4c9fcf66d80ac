use thiserror::Error;

use crate::normality::Verdict;

/// Which of the 2(m+1) systems an error or verdict refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SystemId {
    /// Type I system at the multi-index with `n` in slot `k`.
    Type1 { k: usize },
    /// Type II system at the multi-index with `mn` in slot `s`.
    Type2 { s: usize },
}

impl std::fmt::Display for SystemId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SystemId::Type1 { k } => write!(f, "type I (k = {k})"),
            SystemId::Type2 { s } => write!(f, "type II (s = {s})"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("leading coefficient of series {series} is zero")]
    LeadingZero { series: usize },

    #[error(
        "insufficient truncation: {required} coefficients required, series {series} has {available}"
    )]
    InsufficientTruncation {
        series: usize,
        required: usize,
        available: usize,
    },

    #[error("{system} at n = {n} is not normal: {verdict}")]
    NotNormal {
        system: SystemId,
        n: usize,
        verdict: Box<Verdict>,
    },

    #[error("parse error at {position}: {reason}")]
    Parse { position: String, reason: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("mixed inputs: {0}")]
    MixedInputs(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
