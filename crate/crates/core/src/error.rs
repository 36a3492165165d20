use num_bigint::BigInt;
use thiserror::Error;

use crate::degeneration::CurveLabel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column (got {rows}x{cols})")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("matrix of shape {rows}x{cols} needs {expected} entries, got {found}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        found: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("modulus must be at least {min}, got {got}")]
    InvalidModulus { min: u32, got: BigInt },

    #[error("n must be at least 1, got {0}")]
    InvalidChainLength(i64),

    #[error("t must lie in [1, {n}], got {t}")]
    InvalidAttachment { n: i64, t: i64 },

    #[error("curve {0} is not part of this dual graph")]
    UnknownCurve(CurveLabel),

    #[error("intersection number {0}.{1} is undefined on this resolution")]
    UndefinedPairing(CurveLabel, CurveLabel),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("witness from the {0} path does not satisfy the system")]
    RejectedWitness(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
