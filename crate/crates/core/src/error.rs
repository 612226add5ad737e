use thiserror::Error;

/// Errors raised by the algebra, lattice and classification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level K must be at least 1")]
    ZeroLevel,

    #[error("level K = {0} exceeds the supported maximum {max}", max = crate::ring::MAX_LEVEL)]
    LevelTooLarge(u32),

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),

    #[error("projection level l = {l} out of range for K = {level}")]
    ProjectionOutOfRange { l: u32, level: u32 },

    #[error("k must be an odd positive integer, got {0}")]
    EvenK(u64),

    #[error("element is not invertible in Q[chi]/I<{0}>")]
    NotInvertible(u32),

    #[error("zero projection has no normal form")]
    ZeroProjection,

    #[error("element does not have integral coefficients")]
    NotIntegral,

    #[error("non-exact division in {0}")]
    InexactDivision(&'static str),

    #[error("r-minus search at n = {n} with (k, m) = ({k}, {m}) found {count} admissible bit-vectors")]
    RMinusNotUnique { n: usize, k: u64, m: u32, count: usize },

    #[error("polynomial degree {degree} exceeds the bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },

    #[error("dimension parameter d = {d} is below the supported minimum {min}")]
    DimensionTooSmall { d: u32, min: u32 },

    #[error("enumeration of {needed} vectors exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("normal invariant vector is not in the kernel of the rho bracket")]
    NotInKernel,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable identifier printed by the command-line tool.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroLevel => "zero-level",
            Error::LevelTooLarge(_) => "level-too-large",
            Error::LevelMismatch(..) => "level-mismatch",
            Error::ProjectionOutOfRange { .. } => "projection-out-of-range",
            Error::EvenK(_) => "even-k",
            Error::NotInvertible(_) => "not-invertible",
            Error::ZeroProjection => "zero-projection",
            Error::NotIntegral => "not-integral",
            Error::InexactDivision(_) => "inexact-division",
            Error::RMinusNotUnique { .. } => "r-minus-not-unique",
            Error::DegreeOverflow { .. } => "degree-overflow",
            Error::DimensionTooSmall { .. } => "dimension-too-small",
            Error::BudgetExceeded { .. } => "budget-exceeded",
            Error::NotInKernel => "not-in-kernel",
            Error::Parse(_) => "parse",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Inconsistency(_) => "inconsistency",
        }
    }
}
