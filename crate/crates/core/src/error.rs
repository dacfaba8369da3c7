use thiserror::Error;

/// Why a computation could not give a definite answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Unknown {
    /// Finite image enumeration hit the element budget.
    Budget { budget: usize, reached: usize },
    /// Relation lattice could not be certified at the highest precision.
    Uncertified(String),
}

impl std::fmt::Display for Unknown {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Unknown::Budget { budget, reached } => {
                write!(f, "congruence image exceeds budget of {budget} elements (reached {reached})")
            }
            Unknown::Uncertified(msg) => write!(f, "relation lattice not certified: {msg}"),
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not semisimple")]
    NotSemisimple,
    #[error("generators do not commute")]
    NotCommuting,
    #[error("prime {p} rejected: {reason}")]
    InvalidPrime { p: u64, reason: String },
    #[error("denominator divisible by the congruence prime {0}")]
    DenominatorDivisible(u64),
    #[error("generator index {index} out of range for {count} generators")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("group does not have finite rank")]
    InfiniteRank,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("{path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("unknown: {0}")]
    Unknown(Unknown),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_unknown(&self) -> bool {
        matches!(self, Error::Unknown(_))
    }
}

impl From<Unknown> for Error {
    fn from(u: Unknown) -> Self {
        Error::Unknown(u)
    }
}
