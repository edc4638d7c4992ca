use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation needs a term of positive degree")]
    DegreeZero,

    #[error("terms of mixed degrees: {0} and {1}")]
    MixedDegrees(u32, u32),

    #[error("polynomial {0} is not an admissible Hilbert polynomial")]
    NotAdmissible(String),

    #[error("polynomial {0} does not take integer values at integers")]
    NotNumerical(String),

    #[error("working degree {s} outside [{lo}, {hi}]")]
    DegreeOutOfRange { s: u32, lo: u32, hi: u32 },

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("ideal is not strongly stable: elevation {0} is missing")]
    NotStronglyStable(String),

    #[error("degree {s} is below the regularity {reg}")]
    BelowRegularity { s: u32, reg: u32 },

    #[error("internal error: interpolated Hilbert polynomial disagrees at t = {0}")]
    InterpolationMismatch(u32),

    #[error("tail term {tail} of head {head} lies in the ideal")]
    TailInIdeal { head: String, tail: String },

    #[error("term {0} has degree {1}, expected {2}")]
    DegreeMismatch(String, u32, u32),

    #[error("no marked polynomial with head {0}")]
    HeadMissing(String),

    #[error("{0} is not a head term of the marked set")]
    NotAHead(String),

    #[error("internal error: reduction exceeded {0} steps")]
    ReductionCap(usize),

    #[error("subspace misses the chart: the minor on the ideal columns is singular")]
    ChartMiss,

    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("size guard exceeded: {0}")]
    SizeGuardExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
