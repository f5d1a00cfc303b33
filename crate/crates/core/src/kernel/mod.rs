//! Gamma, log-gamma, lower incomplete gamma, regularized `P` and the error
//! function family, all in `f64`.
//!
//! | Function | Value |
//! |----------|-------|
//! | [`ln_gamma`] | ln Γ(s) |
//! | [`gamma_fn`] | Γ(s) |
//! | [`lower_gamma`] | γ(s, x) = ∫₀ˣ t^{s−1} e^{−t} dt |
//! | [`regularized_p`] | P(s, x) = γ(s, x) / Γ(s) |
//! | [`erf`], [`erfc`] | error function and its complement |
//! | [`erfcx`] | e^{x²} erfc(x) |
//!
//! Every function validates its arguments and reports problems through
//! [`Error`](crate::Error); none of them returns NaN or an infinity.

use serde::{Deserialize, Serialize};

mod erf;
mod gamma;
mod incomplete;

pub use erf::{erf, erfc, erfcx};
pub use gamma::{gamma_fn, ln_gamma};
pub use incomplete::{lower_gamma, lower_gamma_branch, regularized_p, Branch};

pub(crate) use incomplete::series_sum;

/// How a value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Series,
    ContinuedFraction,
    ClosedForm,
    Quadrature,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Series => "series",
            Method::ContinuedFraction => "continued-fraction",
            Method::ClosedForm => "closed-form",
            Method::Quadrature => "quadrature",
        })
    }
}

/// A computed value together with an estimate of its absolute error.
///
/// `value` and `abs_err` are always finite and `abs_err >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err: f64,
    pub method: Method,
    /// Number of series terms, continued-fraction steps or integrand calls.
    pub evals: usize,
}

impl EvalResult {
    pub fn new(value: f64, abs_err: f64, method: Method, evals: usize) -> Self {
        debug_assert!(value.is_finite(), "non-finite value {value}");
        debug_assert!(abs_err.is_finite() && abs_err >= 0.0);
        EvalResult {
            value,
            abs_err,
            method,
            evals,
        }
    }

    pub fn closed(value: f64) -> Self {
        EvalResult::new(value, value.abs() * f64::EPSILON, Method::ClosedForm, 0)
    }

    /// Multiplies value and error estimate by a constant.
    pub fn scaled(self, k: f64) -> Self {
        EvalResult {
            value: self.value * k,
            abs_err: self.abs_err * k.abs(),
            ..self
        }
    }
}

pub(crate) fn check_finite(name: &str, v: f64) -> crate::Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(crate::Error::domain(format!("{name} must be finite, got {v}")))
    }
}
