//! erf, erfc and erfcx through the incomplete gamma expansions at order 1/2.
//!
//! erf(x) = sign(x) P(1/2, x²). For |x| <= 1/2 the series branch is used;
//! beyond that the continued fraction gives erfc directly, so erfc never
//! suffers from the cancellation in 1 − erf.

use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::incomplete::{series_sum, upper_fraction};
use super::{check_finite, EvalResult, Method};

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;
const EPS: f64 = f64::EPSILON;

const SERIES_LIMIT: f64 = 0.5;
// erfc(x) < 1e-324 beyond this point.
const ERFC_UNDERFLOW: f64 = 27.3;
// Above this erfcx(x) = 1/(x sqrt(pi)) to full precision.
const ERFCX_ASYMPTOTIC: f64 = 1e8;

/// erf(|x|) for |x| <= SERIES_LIMIT.
fn erf_series(ax: f64) -> Result<EvalResult> {
    let z = ax * ax;
    let (sum, n) = series_sum(0.5, z)?;
    let v = ax * (-z).exp() * sum * FRAC_1_SQRT_PI;
    Ok(EvalResult::new(v, v * EPS * (4.0 + n as f64), Method::Series, n))
}

/// x * h / sqrt(pi) = erfcx(x) for x > SERIES_LIMIT.
fn erfcx_fraction(x: f64) -> Result<EvalResult> {
    let (h, n) = upper_fraction(0.5, x * x)?;
    let v = FRAC_1_SQRT_PI * h * x;
    Ok(EvalResult::new(v, v * EPS * (4.0 + n as f64), Method::ContinuedFraction, n))
}

/// erfc(x) for x > SERIES_LIMIT.
fn erfc_fraction(x: f64) -> Result<EvalResult> {
    if x > ERFC_UNDERFLOW {
        return Ok(EvalResult::new(0.0, f64::MIN_POSITIVE, Method::ContinuedFraction, 0));
    }
    let scaled = erfcx_fraction(x)?;
    let damp = (-x * x).exp();
    let v = scaled.value * damp;
    // exp(-x²) carries a relative error of about x² ulp
    let err = v * EPS * (4.0 + scaled.evals as f64 + x * x);
    Ok(EvalResult::new(v, err, Method::ContinuedFraction, scaled.evals))
}

/// Error function, (2/√π) ∫₀ˣ e^{−t²} dt.
pub fn erf(x: f64) -> Result<EvalResult> {
    check_finite("x", x)?;
    if x == 0.0 {
        return Ok(EvalResult::new(0.0, 0.0, Method::ClosedForm, 0));
    }
    let ax = x.abs();
    let r = if ax <= SERIES_LIMIT {
        erf_series(ax)?
    } else {
        let c = erfc_fraction(ax)?;
        EvalResult::new(1.0 - c.value, c.abs_err + EPS, c.method, c.evals)
    };
    Ok(if x < 0.0 { r.scaled(-1.0) } else { r })
}

/// Complementary error function 1 − erf(x).
pub fn erfc(x: f64) -> Result<EvalResult> {
    check_finite("x", x)?;
    if x == 0.0 {
        return Ok(EvalResult::new(1.0, 0.0, Method::ClosedForm, 0));
    }
    if x > SERIES_LIMIT {
        return erfc_fraction(x);
    }
    if x < -SERIES_LIMIT {
        let c = erfc_fraction(-x)?;
        return Ok(EvalResult::new(2.0 - c.value, c.abs_err + 2.0 * EPS, c.method, c.evals));
    }
    let e = erf(x)?;
    Ok(EvalResult::new(1.0 - e.value, e.abs_err + EPS, e.method, e.evals))
}

/// Scaled complement e^{x²} erfc(x) for x >= 0; finite for every finite x.
pub fn erfcx(x: f64) -> Result<EvalResult> {
    check_finite("x", x)?;
    if x < 0.0 {
        return Err(Error::domain(format!("erfcx requires x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(EvalResult::new(1.0, 0.0, Method::ClosedForm, 0));
    }
    if x <= SERIES_LIMIT {
        let e = erf_series(x)?;
        let g = (x * x).exp();
        let v = g * (1.0 - e.value);
        return Ok(EvalResult::new(v, v * EPS * 4.0 + g * e.abs_err, e.method, e.evals));
    }
    if x >= ERFCX_ASYMPTOTIC {
        let v = 1.0 / (x * PI.sqrt());
        return Ok(EvalResult::new(v, v * EPS * 2.0, Method::ClosedForm, 0));
    }
    erfcx_fraction(x)
}
