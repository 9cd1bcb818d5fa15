use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("m must be at least {min}, got {got}")]
    TotalTooSmall { min: u32, got: u32 },

    #[error("partitions of different totals: {left} vs {right}")]
    TotalMismatch { left: u32, right: u32 },

    #[error("ambient dimension n must be at least 2, got {0}")]
    DimensionTooSmall(u32),

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("{what} {value} out of range {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: u64,
        lo: u64,
        hi: u64,
    },

    #[error("stratum {target} does not pass through points of type {point}: {point} is not coarser than {target}")]
    NotCoarser { point: String, target: String },

    #[error("not a symmetric-power chain: {0}")]
    NotSymmetricPowerChain(String),

    #[error("smooth or out-of-scope case: {0}")]
    OutOfScope(String),

    #[error("oracle scale exceeded: {what} is {got}, limit {limit}")]
    OracleScaleExceeded {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
