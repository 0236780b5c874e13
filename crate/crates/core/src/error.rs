use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation `{input}`: {reason}")]
    Parse { input: String, reason: String },

    /// The permutation contains a decreasing subsequence longer than `k`.
    #[error("{perm} is not a union of {k} increasing subsequences (longest decreasing subsequence has length {found})")]
    NotInClass { perm: String, k: usize, found: usize },

    #[error("{perm} is not {k}-rigid")]
    NotRigid { perm: String, k: usize },

    /// Two images of the same pattern point form a 21, so they have no infimum.
    #[error("images of pattern point {point} form a 21 and are incomparable")]
    Incomparable { point: usize },

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("not a subdirect product: {0}")]
    NotSubdirect(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A guarantee of the underlying theory failed to hold. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
