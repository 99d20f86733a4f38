use thiserror::Error;

pub type Result<T> = std::result::Result<T, XxzError>;

#[derive(Debug, Error)]
pub enum XxzError {
    #[error("chain length must be even and at least 2, got {0}")]
    InvalidLength(usize),

    #[error("length {length} exceeds the cap {cap}")]
    TooLarge { length: usize, cap: usize },

    #[error("site {site} out of range for length {length}")]
    SiteOutOfRange { site: usize, length: usize },

    #[error("parameters outside the Hermitian regime: {0}")]
    Domain(String),

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error(transparent)]
    Core(#[from] rpm_core::CoreError),
}

pub(crate) fn check_length(length: usize, cap: usize) -> Result<()> {
    if length < 2 || length % 2 == 1 {
        return Err(XxzError::InvalidLength(length));
    }
    if length > cap {
        return Err(XxzError::TooLarge { length, cap });
    }
    Ok(())
}
