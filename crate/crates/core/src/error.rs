use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("partition breakpoints must be strictly increasing (violated at index {index})")]
    NonMonotonePartition { index: usize },
    #[error("partition must start at 0 and end at 1")]
    EndpointsNot01,
    #[error("block values are not symmetric at ({row}, {col})")]
    AsymmetricValues { row: usize, col: usize },
    #[error("value {value} at ({row}, {col}) lies outside [0, 1]")]
    ValueOutOfRange {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coordinate ({x}, {y}) lies outside [0, 1]^2")]
    CoordinateOutOfRange { x: f64, y: f64 },
    #[error("unknown graphon family {0:?}")]
    UnknownFamily(String),
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
    #[error("node count must be at least 1")]
    InvalidN,
    #[error("trial count must be at least 1")]
    InvalidTrials,
    #[error("resolution {resolution} does not refine the partition")]
    UnalignedPartition { resolution: usize },
    #[error("coefficient matrix is not symmetric at ({row}, {col})")]
    AsymmetricC { row: usize, col: usize },
    #[error("objective is unbounded")]
    UnboundedObjective,
    #[error("brute-force oracle supports at most {max} vertices, got {n}")]
    NTooLargeForOracle { n: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
