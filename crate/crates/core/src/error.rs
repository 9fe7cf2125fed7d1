use alloc::string::String;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("coxeter matrix is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },
    #[error("diagonal entry ({index}, {index}) must be 1")]
    BadDiagonal { index: usize },
    #[error("off-diagonal label at ({row}, {col}) must be at least 2 or infinite")]
    BadLabel { row: usize, col: usize },
    #[error("generator s{index} is out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("move is not applicable at position {position}")]
    MoveNotApplicable { position: usize },
    #[error("word is not S-reduced")]
    NotReduced,
    #[error("word does not represent the identity")]
    NotIdentity,
    #[error("positions do not form a deletion set for this word")]
    NotADeletionSet,
    #[error("orbit search exceeded {limit} states")]
    OrbitLimitExceeded { limit: usize },
    #[error("subset enumeration exceeded {limit} candidates")]
    SubsetBudgetExceeded { limit: u64 },
    #[error("floating point comparison is inconclusive")]
    PrecisionInconclusive,
    #[error("matrix and rewriting oracles disagree")]
    OracleDisagreement,
}

impl Error {
    /// True for the two budget errors, which callers usually report
    /// differently from bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::OrbitLimitExceeded { .. } | Error::SubsetBudgetExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
