use thiserror::Error;

/// Failures reported by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the documented working range of a special function.
    #[error("argument {value} outside working range {range}")]
    Range { value: f64, range: &'static str },

    /// Input violates an operation precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A quantity that must be real came back with a non-negligible imaginary part.
    #[error("numerical consistency check failed: {what} (residual {residual:e}, threshold {threshold:e})")]
    NumericalConsistency {
        what: &'static str,
        residual: f64,
        threshold: f64,
    },

    /// Quadrature refinement did not settle within the allowed number of doublings.
    #[error("quadrature did not converge: coarse {coarse:e}, fine {fine:e}, relative change {relative:e}")]
    Accuracy {
        coarse: f64,
        fine: f64,
        relative: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
