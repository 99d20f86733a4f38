//! Exact checks of the T-Q relation, the FSZ polynomials and the derivatives
//! of the generating function at the stochastic point, over the field `Q(q)`.

pub mod bethe;
pub mod checks;
pub mod derivatives;
pub mod error;
pub mod fsz;
pub mod poly;
pub mod qfield;
pub mod report;

pub use checks::FszData;
pub use error::{Result, TqError};
pub use poly::{Polynomial, QPoly, RatPoly};
pub use qfield::{rat, QFieldElement};
pub use report::{Check, Report};
