use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("vertex {vertex} is outside 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },

    #[error("complex is not flag: clique {clique:?} is not a face (pass the flag-completion flag to complete it)")]
    NotFlag { clique: Vec<usize> },

    #[error("identity violated: extracted exponent n = {value} at multidegree {alpha:?}")]
    IdentityViolated { alpha: Vec<u32>, value: String },

    #[error("algebra elements belong to different algebras")]
    SpecMismatch,

    #[error("truncation mismatch: {0:?} vs {1:?}")]
    TruncationMismatch(Option<u32>, Option<u32>),

    #[error("truncation exceeded: {what} needs {needed}, cap is {cap}")]
    TruncationExceeded {
        what: String,
        needed: usize,
        cap: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
