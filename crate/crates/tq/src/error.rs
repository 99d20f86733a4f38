use thiserror::Error;

pub type Result<T> = std::result::Result<T, TqError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TqError {
    #[error("N must be at least {min}, got {n}")]
    InvalidN { n: usize, min: usize },

    #[error("division by zero in Q(q)")]
    DivisionByZero,

    #[error("polynomial division left a nonzero remainder: {0}")]
    NonzeroRemainder(String),

    #[error("linear system is singular in column {0}")]
    Singular(usize),

    #[error("linear system is inconsistent in row {0}")]
    Inconsistent(usize),

    #[error("expected a rational value, got {0}")]
    NotRational(String),
}

pub(crate) fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(TqError::InvalidN { n, min });
    }
    Ok(())
}
