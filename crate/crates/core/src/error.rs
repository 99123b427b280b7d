use thiserror::Error;

/// Errors produced by the engine.
///
/// `CapExceeded` is its own variant because callers (notably the CLI) map it
/// to a distinct exit code: an exceeded cap is never silently truncated into
/// a wrong answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a supported prime (expected one of 2, 3, 5, 7)")]
    UnsupportedModulus(u64),

    #[error("matrix entry {entry} out of range for modulus {modulus}")]
    EntryOutOfRange { entry: u64, modulus: u64 },

    #[error("matrix has {given} entries, expected {rows}x{cols}")]
    BadEntryCount { rows: usize, cols: usize, given: usize },

    #[error("enumeration of {needed} elements exceeds cap {cap} ({what})")]
    CapExceeded { what: String, needed: u128, cap: u64 },

    #[error("measure prefix is not strictly increasing at position {0}")]
    PrefixNotIncreasing(usize),

    #[error("measure entries must be positive")]
    NonPositiveEntry,

    #[error("measure tail step must be at least 1")]
    ZeroStep,

    #[error("measure tail start {start} must exceed every prefix entry (max {prefix_max})")]
    TailBelowPrefix { start: u64, prefix_max: u64 },

    #[error("infimum of an empty family is undefined (no top element)")]
    EmptyInfimum,

    #[error("chain generator is not monotone at index {0}")]
    ChainNotMonotone(u64),

    #[error("chain limit not detected: {0}")]
    ChainLimitFailed(String),

    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate arrow name `{0}`")]
    DuplicateArrow(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("relation term {term} is not composable at step {step}")]
    RelationNotComposable { term: usize, step: usize },

    #[error("relation terms are not parallel (term {0} has different endpoints)")]
    RelationNotParallel(usize),

    #[error("relation path of length {0} is not admissible (need length >= 2)")]
    RelationTooShort(usize),

    #[error("map for arrow `{arrow}` has shape {got_rows}x{got_cols}, expected {rows}x{cols}")]
    ShapeViolation { arrow: String, rows: usize, cols: usize, got_rows: usize, got_cols: usize },

    #[error("relation {0} does not evaluate to zero on this representation")]
    RelationViolation(usize),

    #[error("representations belong to different algebras")]
    AlgebraMismatch,

    #[error("the zero representation has no indecomposability status")]
    ZeroRepresentation,

    #[error("vector has length {got}, expected {expected}")]
    BadVectorLength { expected: usize, got: usize },

    #[error("subspace tuple is not closed under the arrow `{0}`")]
    NotArrowInvariant(String),

    #[error("submodules belong to different parents")]
    ParentMismatch,

    #[error("seed index {index} out of range for a universe of {len} members")]
    BadMemberIndex { index: usize, len: usize },

    #[error("down-sets belong to universes of different sizes")]
    UniverseMismatch,

    #[error("{context}: {message}")]
    Parse { context: String, message: String },

    #[error("computed value contradicts its cross-check: {0}")]
    CrossCheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable code, used by the CLI error JSON.
    pub fn code(&self) -> &'static str {
        match self {
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Parse { .. } => "parse",
            Error::CrossCheckFailed(_) => "cross_check_failed",
            Error::ChainNotMonotone(_) | Error::ChainLimitFailed(_) => "chain_limit",
            _ => "validation",
        }
    }
}
