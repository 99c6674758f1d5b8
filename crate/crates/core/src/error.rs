use thiserror::Error;

use crate::transforms::LambdaWitness;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("cell count {found} does not match topology extent {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid cell value {0}")]
    InvalidCell(i64),
    #[error("window too short: need at least {needed} cells, have {found}")]
    WindowTooShort { needed: usize, found: usize },
    #[error("invalid probability specification: {0}")]
    InvalidProbability(String),
    #[error("configuration has no rule-184 preimage: {0}")]
    NotInLambda(LambdaWitness),
    #[error("ring matching needs equal species counts ({plus} positive, {minus} negative)")]
    RingImbalance { plus: usize, minus: usize },
    #[error("row 0 is not a single phase-boundary configuration")]
    NotPhaseBoundary,
    #[error("sheet exhausted at half tick {time2}")]
    HorizonExhausted { time2: i64 },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("exact enumeration too large for n = {n}")]
    ExactTooLarge { n: usize },
    #[error("burn-in {burn_in} is shorter than the ring relaxation bound {required}")]
    BurnInTooShort { burn_in: usize, required: usize },
    #[error("ring of size {size} still has converging pairs after {steps} steps")]
    RelaxationBound { size: usize, steps: usize },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
