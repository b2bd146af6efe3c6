use thiserror::Error;

/// Errors raised by the parking, fibre, Motzkin and sandpile operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a parking function: {0}")]
    NotAParkingFunction(String),

    #[error("invalid parking preference: {0}")]
    InvalidPreference(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("pattern of length {pattern} is longer than host of length {host}")]
    PatternLongerThanHost { pattern: usize, host: usize },

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("arc set is not a 1-subgraph of G_{perm}: {reason}")]
    NotASubgraphOf { perm: String, reason: String },

    #[error("invalid arc set: {0}")]
    InvalidArcSet(String),

    #[error("size {n} exceeds the brute-force cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },

    #[error("not a Motzkin path: {0}")]
    NotAMotzkinPath(String),

    #[error("invalid lattice path: {0}")]
    InvalidPath(String),

    #[error("not a Motzkin parking function: {0}")]
    NotAMotzkinParkingFunction(String),

    #[error("not a non-crossing matching: {0}")]
    NotANonCrossingMatching(String),

    #[error("not a valid subgraph of the decreasing permutation: {0}")]
    NotAValidDecSubgraph(String),

    #[error("vertex {vertex} is stable ({grains} grains, threshold {n})")]
    VertexStable {
        vertex: usize,
        grains: u64,
        n: usize,
    },

    #[error("configuration is not stable: {0}")]
    NotStable(String),

    #[error("configuration is not recurrent: {0}")]
    NotRecurrent(String),

    #[error("configuration is not minimal recurrent: {0}")]
    NotMinimalRecurrent(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
