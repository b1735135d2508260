//! Exact and high-precision verification of Lambert series and theta
//! function identities.
//!
//! The exact side works with truncated power series on a quarter-power grid
//! ([`series::PrefSeries`]) over arbitrary-precision rationals. The numeric
//! side evaluates Gosper's q-trigonometric functions in arbitrary precision
//! ([`numeric`]). Both feed the same [`report::CheckReport`].

pub mod exec;
pub mod lambert;
pub mod numeric;
pub mod registry;
pub mod report;
pub mod series;
pub mod special;

pub use exec::Execution;
pub use numeric::NumericError;
pub use report::{CheckReport, Kind, Status};
pub use series::{PrefSeries, Rat, SeriesError};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("series does not terminate: {0}")]
    NonTerminating(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("identity {id:?} is not of kind {expected}")]
    KindMismatch { id: String, expected: Kind },
}
