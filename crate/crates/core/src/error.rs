use thiserror::Error;

/// Errors raised by the algebra, graph and verification routines.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("dimension must be between 1 and {cap}, got {n}")]
    InvalidDimension { n: u32, cap: u32 },

    #[error("dimension {n} exceeds the configured cap of {cap}")]
    DimensionCapExceeded { n: u32, cap: u32 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("blade mask {mask:#x} out of range for n = {n}")]
    MaskOutOfRange { mask: u32, n: u32 },

    #[error("exact integer arithmetic overflowed")]
    Overflow,

    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },

    #[error("weight a_{index} = {value} is negative or not finite")]
    InvalidWeight { index: usize, value: f64 },

    #[error("weight vector is empty")]
    EmptyWeights,

    #[error("all weights are zero; the eigenspace decomposition needs a nonzero form")]
    ZeroForm,

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: u32, n: u32 },

    #[error("coordinate {coordinate} out of range 1..={n}")]
    CoordinateOutOfRange { coordinate: u32, n: u32 },

    #[error("vertex {vertex} is not in the subgraph")]
    VertexNotInSubgraph { vertex: u32 },

    #[error("the vertex set is empty")]
    EmptySubgraph,

    #[error("vertex set has {got} vertices, expected {expected}")]
    WrongSubsetSize { expected: u64, got: u64 },

    #[error("malformed hex bitset: {0}")]
    BadHex(String),

    #[error("value needs more than 2^{n} bits")]
    TooWide { n: u32 },

    #[error("numerical rank failure: {0}")]
    NumericalRank(String),

    #[error("exhaustive run at n = {n} requires explicit acknowledgment")]
    HeavyRunNotAcknowledged { n: u32 },

    #[error("exhaustive mode supports n <= {cap}, got {n}")]
    ExhaustiveTooLarge { n: u32, cap: u32 },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
