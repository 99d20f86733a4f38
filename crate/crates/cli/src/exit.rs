use rpm_core::CoreError;
use rpm_tq::TqError;
use rpm_xxz::XxzError;

pub const PASS: u8 = 0;
pub const VERIFICATION_FAILURE: u8 = 1;
pub const USAGE: u8 = 2;
pub const RESOURCE: u8 = 3;

/// Bad input detected by the driver itself.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn core_code(e: &CoreError) -> u8 {
    match e {
        CoreError::InvalidLength(_)
        | CoreError::InvalidProfile(_)
        | CoreError::SiteOutOfRange { .. }
        | CoreError::InvalidConfig(_) => USAGE,
        CoreError::CapExceeded { .. } | CoreError::NoConvergence { .. } => RESOURCE,
        CoreError::Consistency(_) => VERIFICATION_FAILURE,
    }
}

pub fn code_for(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return USAGE;
        }
        if let Some(e) = cause.downcast_ref::<CoreError>() {
            return core_code(e);
        }
        if let Some(e) = cause.downcast_ref::<TqError>() {
            return match e {
                TqError::InvalidN { .. } => USAGE,
                _ => VERIFICATION_FAILURE,
            };
        }
        if let Some(e) = cause.downcast_ref::<XxzError>() {
            return match e {
                XxzError::InvalidLength(_) | XxzError::SiteOutOfRange { .. } | XxzError::Domain(_) => USAGE,
                XxzError::TooLarge { .. } | XxzError::NoConvergence { .. } => RESOURCE,
                XxzError::Core(c) => core_code(c),
            };
        }
        if cause.is::<std::io::Error>() {
            return RESOURCE;
        }
    }
    VERIFICATION_FAILURE
}
