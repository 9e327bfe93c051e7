use thiserror::Error;

/// Errors raised by the library. [`Error::name`] gives the stable
/// identifier the command-line front end echoes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parts are not non-increasing: {0:?}")]
    NotNonIncreasing(Vec<u32>),
    #[error("invalid partition text {0:?}")]
    BadPartitionText(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("operation needs a partition of positive weight")]
    EmptyPartition,
    #[error("degree {0} is excluded from the family")]
    DegreeExcluded(usize),
    #[error("matrix Z is not nilpotent")]
    NotNilpotent,
    #[error("eigenvalues are not pairwise distinct (gap {gap:e})")]
    DegenerateSpectrum { gap: f64 },
    #[error("root finder did not converge after {0} iterations")]
    ConvergenceFailure(usize),
    #[error("y must be nonzero")]
    ZeroY,
    #[error("y must be negative, got {0}")]
    NonNegativeY(f64),
    #[error("partition is not even")]
    NotEven,
    #[error("tau vanishes near x = {0}")]
    TauVanishes(f64),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotNonIncreasing(_) => "NotNonIncreasing",
            Error::BadPartitionText(_) => "BadPartitionText",
            Error::NotSquare { .. } => "NotSquare",
            Error::EmptyPartition => "EmptyPartition",
            Error::DegreeExcluded(_) => "DegreeExcluded",
            Error::NotNilpotent => "NotNilpotent",
            Error::DegenerateSpectrum { .. } => "DegenerateSpectrum",
            Error::ConvergenceFailure(_) => "ConvergenceFailure",
            Error::ZeroY => "ZeroY",
            Error::NonNegativeY(_) => "NonNegativeY",
            Error::NotEven => "NotEven",
            Error::TauVanishes(_) => "TauVanishes",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
