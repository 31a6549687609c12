use alloc::string::String;

/// Errors shared by every module. Variants carry enough context to be shown
/// to a user as-is.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("composite of differentials is not zero")]
    NonzeroComposite,
    #[error("basis of bidegree ({s},{n}) has {size} elements, above the cap {cap}")]
    ResourceCap { s: usize, n: usize, size: usize, cap: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("representation is not a sum of dictionary lattices")]
    NotInDictionary,
    #[error("malformed extension class: {0}")]
    MalformedClass(String),
    #[error("resolver ran out of choices")]
    ResolverExhausted,
    #[error("not stabilized in range at ({s},{n})")]
    NotStabilized { s: usize, n: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = core::result::Result<T, Error>;
