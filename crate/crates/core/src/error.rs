use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("cannot parse cycle notation {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("group enumeration exceeded cap of {cap} elements ({partial} found so far)")]
    EnumerationCap { cap: usize, partial: usize },

    #[error("{0} is not an element of the parent group")]
    NotInGroup(String),

    #[error("connection-set element {0} lies in the subgroup H")]
    GeneratorInSubgroup(String),

    #[error("digraph is not strongly connected")]
    NotStronglyConnected,

    #[error("complete digraph has no atoms")]
    CompleteDigraph,

    #[error("brute-force subset budget of {cap} exceeded")]
    BruteForceCap { cap: usize },

    #[error("too many generators for subset scan: {count} > {max}")]
    TooManyGenerators { count: usize, max: usize },

    #[error("internal cross-check failed: {0}")]
    Inconsistent(String),

    #[error("not a partition of the connection set: {0}")]
    NotAPartition(String),

    #[error("invalid generator ordering: {0}")]
    InvalidOrdering(String),

    #[error("Cayley coset digraph is disconnected")]
    Disconnected,

    #[error("operation requires a trivial subgroup H")]
    NontrivialSubgroup,

    #[error("no hierarchical ordering of the generators exists")]
    NotHierarchical,

    #[error("invalid cycle-prefix parameters n={n}, k={k}")]
    CpParams { n: usize, k: usize },

    #[error("{0}")]
    InvalidArgument(String),
}
