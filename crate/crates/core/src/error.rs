use thiserror::Error;

use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("{what} = {value} is outside {range}")]
    Domain {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    /// The parameters produce something that is not a physical state.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NotConverged { sweeps: usize },

    /// Two independent routes disagree, or a CPTP map produced an invalid state.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T: Real>(what: &'static str, value: T, range: &'static str) -> Error {
    Error::Domain {
        what,
        value: value.to_f64().unwrap_or(f64::NAN),
        range,
    }
}
