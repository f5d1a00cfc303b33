//! erfc-weighted integrals of Laplace pairs, closed moment formulas and two
//! Gaussian integrals with erfc closed forms.
//!
//! For a pair f ↔ F and a > 0,
//!
//! ```text
//! ∫₀^∞ f(t) erfc(a√t) dt        = (2/π) ∫₀^{π/2} F(a² sec²θ) dθ
//!                               = (2/π) ∫₀^∞ F(a² cosh²u) / cosh u du
//! ∫₀^∞ f(t) e^{a²t} erfc(a√t) dt = (2/π) ∫₀^{π/2} F(a² tan²θ) dθ
//!                               = (2a/π) ∫₀^∞ F(s²) / (s² + a²) ds
//! ```
//!
//! The second line of each pair comes from s = a·secθ (written with cosh to
//! remove the endpoint singularity) and s = a·tanθ respectively.
//! Every `e^{x²}·erfc(x)` product goes through [`erfcx`].

use std::f64::consts::{FRAC_2_PI, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{erfc, erfcx, gamma_fn, EvalResult, Method};
use crate::laplace::{PairKind, TimeKind, TransformPair};
use crate::quad::{integrate, integrate_nodes, integrate_theta, theta_sin_cos, IntervalSpec, QuadConfig};

/// Which route evaluates a reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionForm {
    Theta,
    S,
    TimeDomain,
}

impl std::str::FromStr for ReductionForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theta" | "theta-form" => Ok(ReductionForm::Theta),
            "s" | "s-form" => Ok(ReductionForm::S),
            "time" | "time-domain" => Ok(ReductionForm::TimeDomain),
            _ => Err(Error::Parse(format!("unknown form {s:?} (theta, s, time)"))),
        }
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive and finite, got {v}")))
    }
}

fn erfcx_or_nan(x: f64) -> f64 {
    erfcx(x).map(|r| r.value).unwrap_or(f64::NAN)
}

/// ∫₀^∞ f(t)·erfc(a√t) dt.
pub fn erfc_weighted_integral(
    p: &TransformPair,
    a: f64,
    form: ReductionForm,
    cfg: &QuadConfig,
) -> Result<EvalResult> {
    check_positive("a", a)?;
    let a2 = a * a;
    // f(t)·erfc(a√t) needs f to grow slower than e^{a²t}; F(a²sec²θ) needs the same.
    if p.sigma0() >= a2 {
        return Err(Error::domain(format!(
            "{p}: sigma0 = {} must be below a² = {a2}",
            p.sigma0()
        )));
    }
    match form {
        ReductionForm::Theta => {
            let r = integrate_theta(
                |n| {
                    let (_, c) = theta_sin_cos(n);
                    p.transform_unchecked(a2 / (c * c))
                },
                cfg,
            )?;
            Ok(r.scaled(FRAC_2_PI))
        }
        ReductionForm::S => {
            let r = integrate(
                |u| {
                    let ch = u.cosh();
                    if ch.is_infinite() {
                        return 0.0;
                    }
                    p.transform_unchecked(a2 * ch * ch) / ch
                },
                &IntervalSpec::half_infinite(0.0),
                cfg,
            )?;
            Ok(r.scaled(FRAC_2_PI))
        }
        ReductionForm::TimeDomain => match p.time_kind() {
            TimeKind::Dirac => {
                let b = p.impulse_location().expect("dirac pair");
                erfc(a * b.sqrt())
            }
            // f(t)·erfc(a√t) = f(t)e^{−a²t}·erfcx(a√t)
            TimeKind::Ordinary => integrate(
                |t| p.time_damped(t, a2).unwrap_or(f64::NAN) * erfcx_or_nan(a * t.sqrt()),
                &IntervalSpec::half_infinite(0.0).singular_lower(p.singular_at_zero()),
                cfg,
            ),
        },
    }
}

/// Why a form of the exponentially weighted reduction does not apply to `p`.
pub fn exp_form_guard(p: &TransformPair, form: ReductionForm) -> Option<String> {
    let sigma0 = p.sigma0();
    match form {
        // F(a²tan²θ) reaches F(0) at θ = 0
        ReductionForm::Theta if sigma0 >= 0.0 => Some(format!(
            "{p}: sigma0 = {sigma0} >= 0 forbids theta-form under exp weighting (F is evaluated down to s = 0)"
        )),
        ReductionForm::Theta => None,
        // F(s²)/(s²+a²) near s = 0: only an integrable power singularity is allowed
        ReductionForm::S => match p.kind() {
            _ if sigma0 < 0.0 => None,
            PairKind::Power { r } if r < -0.5 => None,
            PairKind::Power { r } => Some(format!(
                "{p}: F(s²) ~ s^{} is not integrable at s = 0 (needs r < -1/2)",
                -2.0 * r - 2.0
            )),
            _ => Some(format!(
                "{p}: sigma0 = {sigma0} >= 0 puts a singularity of F(s²) on the s-form path"
            )),
        },
        // f(t)·erfcx(a√t) with erfcx(x) ~ 1/(x√π) at infinity
        ReductionForm::TimeDomain => match p.kind() {
            PairKind::Dirac { .. } => None,
            PairKind::Power { r } if r < -0.5 => None,
            PairKind::Power { r } => Some(format!(
                "{p}: time-domain integral diverges for r >= -1/2 (integrand ~ t^{}/(a√π))",
                r - 0.5
            )),
            PairKind::Exponential { c } if c < 0.0 => None,
            PairKind::Exponential { .. } => Some(format!(
                "{p}: time-domain integral diverges for c >= 0"
            )),
        },
    }
}

/// ∫₀^∞ e^{a²t}·f(t)·erfc(a√t) dt.
pub fn erfc_weighted_exp_integral(
    p: &TransformPair,
    a: f64,
    form: ReductionForm,
    cfg: &QuadConfig,
) -> Result<EvalResult> {
    check_positive("a", a)?;
    if let Some(why) = exp_form_guard(p, form) {
        return Err(Error::Domain(why));
    }
    let a2 = a * a;
    match form {
        ReductionForm::Theta => {
            let r = integrate_theta(
                |n| {
                    let (s, c) = theta_sin_cos(n);
                    let tan = s / c;
                    p.transform_unchecked(a2 * tan * tan)
                },
                cfg,
            )?;
            Ok(r.scaled(FRAC_2_PI))
        }
        ReductionForm::S => {
            let r = integrate(
                |s| p.transform_unchecked(s * s) / (s * s + a2),
                &IntervalSpec::half_infinite(0.0).singular_lower(p.sigma0() >= 0.0),
                cfg,
            )?;
            Ok(r.scaled(a * FRAC_2_PI))
        }
        ReductionForm::TimeDomain => match p.time_kind() {
            TimeKind::Dirac => {
                let b = p.impulse_location().expect("dirac pair");
                erfcx(a * b.sqrt())
            }
            TimeKind::Ordinary => integrate(
                |t| p.time_value(t).unwrap_or(f64::NAN) * erfcx_or_nan(a * t.sqrt()),
                &IntervalSpec::half_infinite(0.0).singular_lower(p.singular_at_zero()),
                cfg,
            ),
        },
    }
}

/// ∫₀^∞ t^r erfc(a√t) dt = Γ(r+3/2) / (a^{2r+2} √π (1+r)).
pub fn erfc_moment(r: f64, a: f64) -> Result<f64> {
    if !(r.is_finite() && r > -1.0) {
        return Err(Error::domain(format!("erfc_moment requires r > -1, got {r}")));
    }
    check_positive("a", a)?;
    Ok(gamma_fn(r + 1.5)? / (a.powf(2.0 * r + 2.0) * PI.sqrt() * (1.0 + r)))
}

/// ∫₀^∞ t^μ erfc(at) dt = Γ(1+μ/2) / (√π a^{μ+1} (1+μ)).
pub fn erfc_linear_moment(mu: f64, a: f64) -> Result<f64> {
    if !(mu.is_finite() && mu > -1.0) {
        return Err(Error::domain(format!("erfc_linear_moment requires mu > -1, got {mu}")));
    }
    check_positive("a", a)?;
    Ok(gamma_fn(1.0 + 0.5 * mu)? / (PI.sqrt() * a.powf(mu + 1.0) * (1.0 + mu)))
}

/// Quadrature of ∫_a^∞ e^{−b²t²} / (t √(t²−a²)) dt.
pub fn gauss_singular_integral(a: f64, b: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    integrate_nodes(
        |n| {
            let t = n.x;
            // t² − a² = u(2a + u) with u measured from the endpoint
            let u = n.from_lower;
            (-b * b * t * t).exp() / (t * (u * (2.0 * a + u)).sqrt())
        },
        &IntervalSpec::half_infinite(a).singular_lower(true),
        cfg,
    )
}

/// (π / 2a)·erfc(ab).
pub fn gauss_singular_closed(a: f64, b: f64) -> Result<f64> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    Ok(PI / (2.0 * a) * erfc(a * b)?.value)
}

/// Quadrature of ∫₀^∞ e^{−b²t²} / (t² + a²) dt.
pub fn gauss_lorentz_integral(a: f64, b: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    integrate(
        |t| (-b * b * t * t).exp() / (t * t + a * a),
        &IntervalSpec::half_infinite(0.0),
        cfg,
    )
}

/// (π / 2a)·e^{a²b²}·erfc(ab), evaluated as (π / 2a)·erfcx(ab).
pub fn gauss_lorentz_closed(a: f64, b: f64) -> Result<f64> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    Ok(PI / (2.0 * a) * erfcx(a * b)?.value)
}

fn check_exp_moment_order(r: f64) -> Result<()> {
    if r.is_finite() && r > -1.0 && r < -0.5 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "exp-weighted moment needs -1 < r < -1/2, got {r}; for r >= -1/2 the integrand \
             t^r e^{{a²t}} erfc(a√t) ~ t^(r-1/2)/(a√π) is not integrable at infinity"
        )))
    }
}

/// (2aΓ(r+1)/π) ∫₀^∞ ds / (s^{2r+2} (s² + a²)), the s-domain value of
/// ∫₀^∞ t^r e^{a²t} erfc(a√t) dt. Both sides are finite only for −1 < r < −1/2.
pub fn exp_erfc_moment_rhs(r: f64, a: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    check_exp_moment_order(r)?;
    check_positive("a", a)?;
    let k = 2.0 * a * gamma_fn(r + 1.0)? / PI;
    let q = 2.0 * r + 2.0;
    let r = integrate(
        |s| 1.0 / (s.powf(q) * (s * s + a * a)),
        &IntervalSpec::half_infinite(0.0).singular_lower(true),
        cfg,
    )?;
    Ok(r.scaled(k))
}

/// Closed form of the same moment, Γ(r+1) a^{−2r−2} / cos(π(r+1)).
pub fn exp_erfc_moment_closed(r: f64, a: f64) -> Result<f64> {
    check_exp_moment_order(r)?;
    check_positive("a", a)?;
    Ok(gamma_fn(r + 1.0)? * a.powf(-2.0 * r - 2.0) / (PI * (r + 1.0)).cos())
}

/// (2aΓ(r+1)/π) ∫_a^∞ ds / (s^{2r+2} (s² + a²)): the s-integral started at
/// s = a instead of 0. It does not equal the time-domain moment; kept to
/// document the difference.
pub fn exp_erfc_moment_rhs_from_a(r: f64, a: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    if !(r.is_finite() && r > -1.0) {
        return Err(Error::domain(format!("requires r > -1, got {r}")));
    }
    check_positive("a", a)?;
    let k = 2.0 * a * gamma_fn(r + 1.0)? / PI;
    let q = 2.0 * r + 2.0;
    let r = integrate(
        |s| 1.0 / (s.powf(q) * (s * s + a * a)),
        &IntervalSpec::half_infinite(a),
        cfg,
    )?;
    Ok(r.scaled(k))
}

/// Quadrature of ∫₀^∞ t^r e^{a²t} erfc(a√t) dt, guarded to −1 < r < −1/2.
pub fn exp_erfc_moment_time(r: f64, a: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    check_exp_moment_order(r)?;
    check_positive("a", a)?;
    integrate(
        |t| t.powf(r) * erfcx_or_nan(a * t.sqrt()),
        &IntervalSpec::half_infinite(0.0).singular_lower(true),
        cfg,
    )
}

/// Marks a closed-form value as such.
pub fn closed(value: f64) -> EvalResult {
    EvalResult::new(value, value.abs() * 4.0 * f64::EPSILON, Method::ClosedForm, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laplace::{make_dirac, make_exponential, make_power, registry};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    #[test]
    fn plain_examples() {
        let p0 = make_power(0.0).unwrap();
        for form in [ReductionForm::Theta, ReductionForm::S, ReductionForm::TimeDomain] {
            let v = erfc_weighted_integral(&p0, 1.0, form, &cfg()).unwrap().value;
            assert!(rel(v, 0.5) < 1e-9, "{form:?}: {v}");
        }
        let d = make_dirac(1.0).unwrap();
        let v = erfc_weighted_integral(&d, 1.0, ReductionForm::Theta, &cfg()).unwrap().value;
        assert!(rel(v, 0.157_299_207_050_285_13) < 1e-9);
        let p1 = make_power(1.0).unwrap();
        let v = erfc_weighted_integral(&p1, 2.0, ReductionForm::S, &cfg()).unwrap().value;
        // Γ(5/2)/(2⁴·√π·2) = 3/128
        assert!(rel(v, 3.0 / 128.0) < 1e-9, "{v}");
    }

    #[test]
    fn plain_guard() {
        let p = make_exponential(1.0).unwrap();
        for form in [ReductionForm::Theta, ReductionForm::S, ReductionForm::TimeDomain] {
            assert!(matches!(
                erfc_weighted_integral(&p, 0.5, form, &cfg()),
                Err(Error::Domain(_))
            ));
        }
        assert!(erfc_weighted_integral(&p, 0.0, ReductionForm::S, &cfg()).is_err());
    }

    #[test]
    fn exp_examples() {
        let d = make_dirac(1.0).unwrap();
        for form in [ReductionForm::Theta, ReductionForm::S, ReductionForm::TimeDomain] {
            let v = erfc_weighted_exp_integral(&d, 1.0, form, &cfg()).unwrap().value;
            assert!(rel(v, 0.427_583_576_155_807) < 1e-9, "{form:?}");
        }
        let d4 = make_dirac(4.0).unwrap();
        let v = erfc_weighted_exp_integral(&d4, 1.0, ReductionForm::Theta, &cfg()).unwrap().value;
        assert!(rel(v, 0.255_395_676_310_505_7) < 1e-9);

        let p = make_power(-0.75).unwrap();
        let s = erfc_weighted_exp_integral(&p, 1.0, ReductionForm::S, &cfg()).unwrap().value;
        let t = erfc_weighted_exp_integral(&p, 1.0, ReductionForm::TimeDomain, &cfg()).unwrap().value;
        assert!(rel(s, t) < 1e-6, "{s} vs {t}");
        // √2·Γ(1/4)
        assert!(rel(s, 5.127_386_704_081_695) < 1e-9, "{s}");
    }

    #[test]
    fn exp_guards() {
        let p = make_power(0.0).unwrap();
        let e = erfc_weighted_exp_integral(&p, 1.0, ReductionForm::Theta, &cfg()).unwrap_err();
        assert!(e.to_string().contains("forbids theta-form"), "{e}");
        assert!(erfc_weighted_exp_integral(&p, 1.0, ReductionForm::S, &cfg()).is_err());
        assert!(erfc_weighted_exp_integral(&p, 1.0, ReductionForm::TimeDomain, &cfg()).is_err());
        let e = make_exponential(0.5).unwrap();
        assert!(exp_form_guard(&e, ReductionForm::S).is_some());
        assert!(exp_form_guard(&make_exponential(-1.0).unwrap(), ReductionForm::S).is_none());
    }

    #[test]
    fn forms_agree_on_registered_pairs() {
        for p in registry().iter().filter(|p| p.sigma0() < 0.0) {
            for a in [0.5, 1.0, 2.0] {
                let vals: Vec<f64> = [ReductionForm::Theta, ReductionForm::S, ReductionForm::TimeDomain]
                    .iter()
                    .map(|&f| erfc_weighted_integral(p, a, f, &cfg()).unwrap().value)
                    .collect();
                for v in &vals[1..] {
                    assert!(rel(*v, vals[0]) < 1e-7, "{p}, a = {a}: {vals:?}");
                }
            }
        }
    }

    #[test]
    fn moment_examples() {
        assert!(rel(erfc_moment(0.0, 1.0).unwrap(), 0.5) < 1e-15);
        assert!(rel(erfc_moment(0.0, 2.0).unwrap(), 0.125) < 1e-15);
        assert!(rel(erfc_moment(-0.5, 1.0).unwrap(), std::f64::consts::FRAC_2_SQRT_PI) < 1e-15);
        assert!(rel(erfc_linear_moment(1.0, 1.0).unwrap(), 0.25) < 1e-15);
        assert!(rel(erfc_linear_moment(0.0, 1.0).unwrap(), 0.564_189_583_547_756_3) < 1e-15);
        assert!(rel(erfc_linear_moment(0.0, 3.0).unwrap(), 0.564_189_583_547_756_3 / 3.0) < 1e-15);
        assert!(erfc_moment(-1.0, 1.0).is_err());
        assert!(erfc_linear_moment(0.0, -1.0).is_err());
    }

    #[test]
    fn moment_matches_quadrature() {
        for (r, a) in [(0.0, 1.0), (0.0, 2.0), (-0.5, 1.0)] {
            let p = make_power(r).unwrap();
            let q = erfc_weighted_integral(&p, a, ReductionForm::TimeDomain, &cfg()).unwrap().value;
            assert!(rel(q, erfc_moment(r, a).unwrap()) < 1e-9);
        }
        let q = integrate(
            |t| t * erfc(t).unwrap().value,
            &IntervalSpec::half_infinite(0.0),
            &cfg(),
        )
        .unwrap();
        assert!(rel(q.value, 0.25) < 1e-9);
    }

    #[test]
    fn gauss_examples() {
        assert!(rel(gauss_singular_closed(1.0, 1.0).unwrap(), 0.247_085_016_642_337_8) < 1e-14);
        assert!(rel(gauss_singular_closed(2.0, 0.5).unwrap(), 0.247_085_016_642_337_8 / 2.0) < 1e-14);
        let n = gauss_singular_integral(1.0, 1.0, &cfg()).unwrap().value;
        assert!((n - gauss_singular_closed(1.0, 1.0).unwrap()).abs() < 1e-9);

        assert!(rel(gauss_lorentz_closed(1.0, 1.0).unwrap(), 0.671_646_710_823_367_6) < 1e-14);
        let big = gauss_lorentz_closed(10.0, 10.0).unwrap();
        assert!(big.is_finite() && big > 0.0);
        let n = gauss_lorentz_integral(1.0, 1.0, &cfg()).unwrap().value;
        assert!((n - gauss_lorentz_closed(1.0, 1.0).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn exp_moment() {
        for (r, a) in [(-0.75, 1.0), (-0.6, 2.0), (-0.9, 0.5)] {
            let s = exp_erfc_moment_rhs(r, a, &cfg()).unwrap().value;
            let t = exp_erfc_moment_time(r, a, &cfg()).unwrap().value;
            let c = exp_erfc_moment_closed(r, a).unwrap();
            assert!(rel(s, c) < 1e-8, "r = {r}, a = {a}: {s} vs {c}");
            assert!(rel(t, c) < 1e-6, "r = {r}, a = {a}: {t} vs {c}");
        }
        assert!(exp_erfc_moment_rhs(0.0, 1.0, &cfg()).is_err());
        assert!(exp_erfc_moment_time(-0.5, 1.0, &cfg()).is_err());
    }

    #[test]
    fn exp_moment_from_a_differs() {
        // (2/π)(1 − π/4)
        let v = exp_erfc_moment_rhs_from_a(0.0, 1.0, &cfg()).unwrap().value;
        assert!(rel(v, 0.136_619_772_367_581_4) < 1e-9, "{v}");
        let from_a = exp_erfc_moment_rhs_from_a(-0.75, 1.0, &cfg()).unwrap().value;
        let time = exp_erfc_moment_time(-0.75, 1.0, &cfg()).unwrap().value;
        assert!(rel(from_a, time) > 0.1);
    }
}
