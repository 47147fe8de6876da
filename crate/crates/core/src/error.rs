//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("entry ({row}, {col}) out of range for a {nrows}x{ncols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        nrows: usize,
        ncols: usize,
    },

    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "support target {target} is infeasible: a rank-{rank} space over {ambient} \
         coordinates admits targets in 1..={max}"
    )]
    InfeasibleTarget {
        target: usize,
        rank: usize,
        ambient: usize,
        max: usize,
    },

    #[error("ambient dimension {ambient} exceeds the support-enumeration cap {cap}")]
    EnumerationCap { ambient: usize, cap: usize },

    #[error("basis has no vectors")]
    EmptyBasis,

    #[error("basis columns are not orthonormal (max deviation {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },

    #[error("matrix is numerically zero; it spans no column space")]
    ZeroMatrix,

    #[error("column already lies in the span of the basis")]
    DependentColumn,

    #[error("basis restricted to the tracked rows is singular")]
    SingularRestriction,

    #[error("no probed row extends the tracked row set to full rank")]
    NoExtendingRow,

    #[error("entry ({row}, {col}) has not been observed")]
    NotObserved { row: usize, col: usize },

    #[error("scripted sampler ran out of draws")]
    ScriptExhausted,

    #[error("scripted draw {draw:?} is not a size-{count} subset of the candidate pool")]
    ScriptMismatch { draw: Vec<usize>, count: usize },

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed matrix file: {0}")]
    MalformedMatrixFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
