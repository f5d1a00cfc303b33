//! Lower incomplete gamma, the error-function family and erfc-weighted
//! Laplace reductions, with a harness that checks each identity between
//! them by evaluating both sides through independent numerical routes.
//!
//! * [`kernel`]: Γ, ln Γ, γ(s, x), P(s, x), erf, erfc, erfcx.
//! * [`quad`]: tanh-sinh / exp-sinh quadrature with endpoint-singularity support.
//! * [`laplace`]: Laplace transform pairs and their self-check.
//! * [`transform`]: erfc-weighted integral operators and moment formulas.
//! * [`identities`]: the identity catalog and grid runner.
//! * [`report`]: JSON/CSV verification reports.

pub mod error;
pub mod identities;
pub mod kernel;
pub mod laplace;
pub mod quad;
pub mod record;
pub mod report;
pub mod transform;

pub use error::{Error, Result};
pub use kernel::{EvalResult, Method};
