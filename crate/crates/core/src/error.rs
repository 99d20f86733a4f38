use thiserror::Error;

pub type Result<T> = std::result::Result<T, CoreError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("system length must be even and at least 2, got {0}")]
    InvalidLength(usize),

    #[error("invalid height profile: {0}")]
    InvalidProfile(String),

    #[error("site {site} out of range for length {length}")]
    SiteOutOfRange { site: usize, length: usize },

    #[error("length {length} exceeds the enumeration cap {cap}")]
    CapExceeded { length: usize, cap: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Kernel of the generator is not one-dimensional, or the exact
    /// certificate failed.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("eigensolver did not converge after {iterations} iterations (last increment {increment:e})")]
    NoConvergence { iterations: usize, increment: f64 },
}
