use thiserror::Error;

/// Failures reported by every evaluator in the crate.
///
/// Non-finite results never leave an evaluator as a value; they surface here.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the region where the function is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The result is mathematically finite but not representable in `f64`.
    #[error("overflow: {0}")]
    Overflow(String),

    /// An iteration or quadrature budget ran out before the tolerance was met.
    #[error("{what} did not converge after {evals} evaluations (best estimate {best}, error estimate {abs_err:e})")]
    NotConverged {
        what: String,
        best: f64,
        abs_err: f64,
        evals: usize,
    },

    /// The integrand produced a non-finite value away from a flagged endpoint.
    #[error("integrand returned {value} at x = {x:e}")]
    Integrand { x: f64, value: f64 },

    /// The operation does not apply to this kind of input.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),

    /// Reading or writing a report failed.
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
