use thiserror::Error;

/// Errors produced by the maximin toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid pair {l}/{d}: need 0 <= l <= d and d >= 1")]
    InvalidPair { l: u64, d: u64 },

    #[error("invalid entitlement {0}: {1}")]
    InvalidEntitlement(String, &'static str),

    #[error("instance too large: {items} items into {parts} parts exceeds the limit of {max_items} items / {max_parts} parts")]
    InstanceTooLarge {
        items: usize,
        parts: usize,
        max_items: usize,
        max_parts: usize,
    },

    #[error("value overflow: item sums do not fit in 64 bits")]
    Overflow,

    #[error("({l}/{d}) dominates ({l_prime}/{d_prime}); no counterexample exists")]
    NoCounterexample {
        l: u32,
        d: u32,
        l_prime: u32,
        d_prime: u32,
    },

    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("l = {l} is out of range for {parts} parts")]
    UnionOutOfRange { l: usize, parts: usize },
}

impl Error {
    /// Whether the error is a refusal to search, as opposed to bad input.
    pub fn is_resource_refusal(&self) -> bool {
        matches!(self, Error::InstanceTooLarge { .. } | Error::Overflow)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
