//! The identity catalog.
//!
//! Route names are stable; they appear in reports. Quadrature routes use
//! [`theta_sin_cos`] so that sin θ and cos θ keep full relative accuracy at
//! both ends of [0, π/2].

use std::f64::consts::{FRAC_2_PI, PI};
use std::sync::OnceLock;

use crate::error::Result;
use crate::kernel::{
    erf, erfcx, gamma_fn, lower_gamma, regularized_p, series_sum, EvalResult, Method,
};
use crate::laplace::{make_dirac, make_power, TransformPair};
use crate::quad::{integrate, integrate_theta, theta_sin_cos, IntervalSpec, Node, QuadConfig};
use crate::transform::{
    closed, erfc_linear_moment, erfc_moment, erfc_weighted_exp_integral, erfc_weighted_integral,
    exp_erfc_moment_closed, exp_erfc_moment_rhs, exp_erfc_moment_time, exp_form_guard,
    gauss_lorentz_closed, gauss_lorentz_integral, gauss_singular_closed, gauss_singular_integral,
    ReductionForm,
};

use super::{IdentitySpec, ParamSpec, Point, Route, RouteOutcome};

const SHAPES: [f64; 5] = [0.25, 0.5, 1.0, 2.5, 5.0];
const UNIT_INTERVAL: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];
const SCALES: [f64; 3] = [0.5, 1.0, 2.0];
const EPS: f64 = f64::EPSILON;

/// 15 log-spaced points on [0.01, 50].
pub fn log_grid() -> Vec<f64> {
    (0..15)
        .map(|k| match k {
            0 => 0.01,
            14 => 50.0,
            _ => 0.01 * 5000f64.powf(k as f64 / 14.0),
        })
        .collect()
}

fn with_zero(mut v: Vec<f64>) -> Vec<f64> {
    v.insert(0, 0.0);
    v
}

fn param(name: &'static str, default: &[f64]) -> ParamSpec {
    ParamSpec {
        name,
        default: default.to_vec(),
    }
}

fn quad(rel_tol: f64, max_level: u32) -> QuadConfig {
    QuadConfig::new(rel_tol, QuadConfig::MIN_ABS_TOL, max_level, 200_000).expect("valid quadrature config")
}

fn route(name: &'static str, eval: fn(&Point, &QuadConfig) -> Result<RouteOutcome>) -> Route {
    Route { name, eval }
}

fn ok(v: EvalResult) -> Result<RouteOutcome> {
    Ok(RouteOutcome::Value(v))
}

fn ok_closed(v: f64) -> Result<RouteOutcome> {
    ok(closed(v))
}

fn require(cond: bool, msg: &str) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

// x^s e^{-x}, zero at x = 0.
fn power_exp(s: f64, x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        (s * x.ln() - x).exp()
    }
}

// Γ(s)·P(s, x) with P saturating to 1 once x overflows.
fn lower_gamma_saturating(gamma_s: f64, s: f64, x: f64) -> f64 {
    if x.is_infinite() {
        return gamma_s;
    }
    match regularized_p(s, x) {
        Ok(p) => gamma_s * p.value,
        Err(_) => f64::NAN,
    }
}

// cos^{p} θ · sin^{q} θ at a θ-node.
fn trig_weight(n: Node, p: f64, q: f64) -> f64 {
    let (s, c) = theta_sin_cos(n);
    c.powf(p) * s.powf(q)
}

fn i1() -> IdentitySpec {
    IdentitySpec {
        id: "I1",
        description: "recurrence: γ(s+1, x) = s·γ(s, x) − x^s e^{−x}",
        params: vec![param("s", &SHAPES), param("x", &log_grid())],
        uses_pair: false,
        constraint: "s > 0, x >= 0",
        domain: |p| {
            require(p["s"] > 0.0, "s must be positive")?;
            require(p["x"] >= 0.0, "x must be non-negative")
        },
        routes: vec![
            route("direct", |p, _| ok(lower_gamma(p["s"] + 1.0, p["x"])?)),
            route("recurrence", |p, _| {
                let (s, x) = (p["s"], p["x"]);
                let g = lower_gamma(s, x)?;
                let tail = power_exp(s, x);
                let v = s * g.value - tail;
                let err = s * g.abs_err + (s * g.value).abs() * EPS + tail * 4.0 * EPS;
                ok(EvalResult::new(v, err, g.method, g.evals))
            }),
        ],
        tol_rel: 1e-10,
        tol_abs: 0.0,
        quad: QuadConfig::default(),
        note: None,
    }
}

fn i2() -> IdentitySpec {
    IdentitySpec {
        id: "I2",
        description: "γ(1, x) = 1 − e^{−x}",
        params: vec![param("x", &log_grid())],
        uses_pair: false,
        constraint: "x >= 0",
        domain: |p| require(p["x"] >= 0.0, "x must be non-negative"),
        routes: vec![
            route("kernel", |p, _| ok(lower_gamma(1.0, p["x"])?)),
            route("closed", |p, _| ok_closed(-(-p["x"]).exp_m1())),
        ],
        tol_rel: 1e-12,
        tol_abs: 0.0,
        quad: QuadConfig::default(),
        note: None,
    }
}

fn i3() -> IdentitySpec {
    IdentitySpec {
        id: "I3",
        description: "γ(1/2, x) = √π·erf(√x)",
        params: vec![param("x", &log_grid())],
        uses_pair: false,
        constraint: "x >= 0",
        domain: |p| require(p["x"] >= 0.0, "x must be non-negative"),
        routes: vec![
            route("kernel", |p, _| ok(lower_gamma(0.5, p["x"])?)),
            route("erf", |p, _| ok(erf(p["x"].sqrt())?.scaled(PI.sqrt()))),
            // √π·erf(√x) = 2∫₀^{√x} e^{−u²} du
            route("quadrature", |p, cfg| {
                let x = p["x"];
                if x == 0.0 {
                    return ok_closed(0.0);
                }
                let r = integrate(|u| (-u * u).exp(), &IntervalSpec::finite(0.0, x.sqrt()), cfg)?;
                ok(r.scaled(2.0))
            }),
        ],
        tol_rel: 1e-11,
        tol_abs: 0.0,
        quad: quad(1e-13, 10),
        note: None,
    }
}

fn i4() -> IdentitySpec {
    IdentitySpec {
        id: "I4",
        description: "∫₀^∞ x^{a−1} γ(b, x) dx = −Γ(a+b)/a",
        params: vec![param("a", &[-0.75, -0.5, -0.25]), param("b", &[0.5, 1.0, 2.0])],
        uses_pair: false,
        constraint: "a < 0, a + b > 0",
        domain: |p| {
            require(p["a"] < 0.0, "a must be negative")?;
            require(p["b"] > 0.0, "b must be positive")?;
            require(p["a"] + p["b"] > 0.0, "a + b must be positive")
        },
        routes: vec![
            route("closed", |p, _| {
                let (a, b) = (p["a"], p["b"]);
                ok_closed(-gamma_fn(a + b)? / a)
            }),
            route("quadrature", |p, cfg| {
                let (a, b) = (p["a"], p["b"]);
                let f = |x: f64| {
                    if x <= b + 1.0 {
                        // γ(b, x) = x^b e^{−x} Σ, so x^{a−1}γ = x^{a+b−1} e^{−x} Σ
                        match series_sum(b, x) {
                            Ok((sum, _)) => (-x).exp() * sum * x.powf(a + b - 1.0),
                            Err(_) => f64::NAN,
                        }
                    } else {
                        match lower_gamma(b, x) {
                            Ok(g) => x.powf(a - 1.0) * g.value,
                            Err(_) => f64::NAN,
                        }
                    }
                };
                ok(integrate(f, &IntervalSpec::half_infinite(0.0).singular_lower(true), cfg)?)
            }),
        ],
        tol_rel: 1e-6,
        tol_abs: 0.0,
        quad: quad(1e-9, 12),
        note: None,
    }
}

fn i5() -> IdentitySpec {
    IdentitySpec {
        id: "I5",
        description: "∫₀^{√t} r^s e^{−(ar)²} dr = γ((s+1)/2, a²t) / (2a^{s+1})",
        params: vec![param("s", &SHAPES), param("a", &SHAPES), param("t", &log_grid())],
        uses_pair: false,
        constraint: "s > -1, a > 0, t >= 0",
        domain: |p| {
            require(p["s"] > -1.0, "s must exceed -1")?;
            require(
                p["a"] > 0.0,
                "a must be positive (for a < 0, a^(s+1) is not real for fractional s)",
            )?;
            require(p["t"] >= 0.0, "t must be non-negative")
        },
        routes: vec![
            route("closed", |p, _| {
                let (s, a, t) = (p["s"], p["a"], p["t"]);
                let g = lower_gamma((s + 1.0) / 2.0, a * a * t)?;
                ok(g.scaled(0.5 / a.powf(s + 1.0)))
            }),
            route("quadrature", |p, cfg| {
                let (s, a, t) = (p["s"], p["a"], p["t"]);
                if t == 0.0 {
                    return ok_closed(0.0);
                }
                let domain = IntervalSpec::finite(0.0, t.sqrt()).singular_lower(s < 0.0);
                ok(integrate(|r| r.powf(s) * (-(a * r) * (a * r)).exp(), &domain, cfg)?)
            }),
        ],
        tol_rel: 1e-9,
        tol_abs: 0.0,
        quad: quad(1e-12, 10),
        note: Some("domain restricted to a > 0: for a < 0 the right side a^(s+1) is not real for fractional s"),
    }
}

fn i6() -> IdentitySpec {
    IdentitySpec {
        id: "I6",
        description: "η^x ∫₀^ξ t^{x−1} e^{−ηt} dt = γ(x, ηξ)",
        params: vec![
            param("x", &SHAPES),
            param("eta", &[0.5, 1.0, 3.0]),
            param("xi", &[0.5, 1.0, 3.0]),
        ],
        uses_pair: false,
        constraint: "x > 0, eta > 0, xi > 0",
        domain: |p| {
            require(p["x"] > 0.0, "x must be positive")?;
            require(p["eta"] > 0.0, "eta must be positive")?;
            require(p["xi"] > 0.0, "xi must be positive")
        },
        routes: vec![
            route("kernel", |p, _| ok(lower_gamma(p["x"], p["eta"] * p["xi"])?)),
            route("quadrature", |p, cfg| {
                let (x, eta, xi) = (p["x"], p["eta"], p["xi"]);
                let domain = IntervalSpec::finite(0.0, xi).singular_lower(x < 1.0);
                let r = integrate(|t| t.powf(x - 1.0) * (-eta * t).exp(), &domain, cfg)?;
                ok(r.scaled(eta.powf(x)))
            }),
        ],
        tol_rel: 1e-9,
        tol_abs: 0.0,
        quad: quad(1e-12, 10),
        note: None,
    }
}

fn i7() -> IdentitySpec {
    IdentitySpec {
        id: "I7",
        description: "γ(a, t)·Γ(b) = 2∫₀^{π/2} γ(a+b, t·sec²θ) cos^{2a−1}θ sin^{2b−1}θ dθ",
        params: vec![param("a", &SHAPES), param("b", &SHAPES), param("t", &with_zero(log_grid()))],
        uses_pair: false,
        constraint: "a > 0, b > 0, t >= 0",
        domain: |p| {
            require(p["a"] > 0.0, "a must be positive")?;
            require(p["b"] > 0.0, "b must be positive")?;
            require(p["t"] >= 0.0, "t must be non-negative")
        },
        routes: vec![
            route("kernel", |p, _| ok(lower_gamma(p["a"], p["t"])?.scaled(gamma_fn(p["b"])?))),
            route("theta", |p, cfg| {
                let (a, b, t) = (p["a"], p["b"], p["t"]);
                let g = gamma_fn(a + b)?;
                let r = integrate_theta(
                    |n| {
                        let (_, c) = theta_sin_cos(n);
                        lower_gamma_saturating(g, a + b, t / (c * c)) * trig_weight(n, 2.0 * a - 1.0, 2.0 * b - 1.0)
                    },
                    cfg,
                )?;
                ok(r.scaled(2.0))
            }),
        ],
        tol_rel: 1e-8,
        tol_abs: 0.0,
        quad: quad(1e-11, 10),
        note: None,
    }
}

fn i8() -> IdentitySpec {
    IdentitySpec {
        id: "I8",
        description: "Γ(a)Γ(b)/Γ(a+b) = 2∫₀^{π/2} cos^{2a−1}θ sin^{2b−1}θ dθ",
        params: vec![param("a", &SHAPES), param("b", &SHAPES)],
        uses_pair: false,
        constraint: "a > 0, b > 0",
        domain: |p| {
            require(p["a"] > 0.0, "a must be positive")?;
            require(p["b"] > 0.0, "b must be positive")
        },
        routes: vec![
            route("closed", |p, _| {
                let (a, b) = (p["a"], p["b"]);
                ok_closed(gamma_fn(a)? * gamma_fn(b)? / gamma_fn(a + b)?)
            }),
            route("theta", |p, cfg| {
                let (a, b) = (p["a"], p["b"]);
                let r = integrate_theta(|n| trig_weight(n, 2.0 * a - 1.0, 2.0 * b - 1.0), cfg)?;
                ok(r.scaled(2.0))
            }),
        ],
        tol_rel: 1e-9,
        tol_abs: 0.0,
        quad: quad(1e-12, 10),
        note: None,
    }
}

// 2∫₀^{π/2} g(t·sec²θ) cot^{2a−1}θ dθ
fn cot_weighted(a: f64, t: f64, g: impl Fn(f64) -> f64, cfg: &QuadConfig) -> Result<EvalResult> {
    let r = integrate_theta(
        |n| {
            let (_, c) = theta_sin_cos(n);
            g(t / (c * c)) * trig_weight(n, 2.0 * a - 1.0, 1.0 - 2.0 * a)
        },
        cfg,
    )?;
    Ok(r.scaled(2.0))
}

fn i9() -> IdentitySpec {
    IdentitySpec {
        id: "I9",
        description: "γ(a, t)Γ(1−a) = 2∫₀^{π/2}(1 − e^{−t sec²θ}) cot^{2a−1}θ dθ \
                      = π csc(πa) − 2∫₀^{π/2} e^{−t sec²θ} cot^{2a−1}θ dθ",
        params: vec![param("a", &UNIT_INTERVAL), param("t", &[0.0, 0.01, 0.1, 1.0, 10.0])],
        uses_pair: false,
        constraint: "0 < a < 1, t >= 0",
        domain: |p| {
            require(p["a"] > 0.0 && p["a"] < 1.0, "a must lie in (0, 1)")?;
            require(p["t"] >= 0.0, "t must be non-negative")
        },
        routes: vec![
            route("kernel", |p, _| {
                let a = p["a"];
                ok(lower_gamma(a, p["t"])?.scaled(gamma_fn(1.0 - a)?))
            }),
            route("first-form", |p, cfg| {
                ok(cot_weighted(p["a"], p["t"], |u| -(-u).exp_m1(), cfg)?)
            }),
            route("second-form", |p, cfg| {
                let a = p["a"];
                let q = cot_weighted(a, p["t"], |u| (-u).exp(), cfg)?;
                let c = PI / (PI * a).sin();
                ok(EvalResult::new(c - q.value, q.abs_err + c * EPS, Method::Quadrature, q.evals))
            }),
        ],
        tol_rel: 1e-7,
        // at t = 0 the second form is a difference of two equal O(1) numbers
        tol_abs: 1e-9,
        quad: quad(1e-11, 10),
        note: None,
    }
}

fn i10() -> IdentitySpec {
    IdentitySpec {
        id: "I10",
        description: "∫₀^∞ (1 − e^{−t}) t^{a−1} dt = −Γ(a+1)/a",
        params: vec![param("a", &[-0.9, -0.75, -0.5, -0.25, -0.1])],
        uses_pair: false,
        constraint: "-1 < a < 0",
        domain: |p| require(p["a"] > -1.0 && p["a"] < 0.0, "a must lie in (-1, 0)"),
        routes: vec![
            route("closed", |p, _| ok_closed(-gamma_fn(p["a"] + 1.0)? / p["a"])),
            route("quadrature", |p, cfg| {
                let a = p["a"];
                // (1 − e^{−t})/t · t^a keeps both factors finite near 0
                let f = |t: f64| -(-t).exp_m1() / t * t.powf(a);
                ok(integrate(f, &IntervalSpec::half_infinite(0.0).singular_lower(true), cfg)?)
            }),
        ],
        tol_rel: 1e-7,
        tol_abs: 0.0,
        quad: quad(1e-10, 12),
        note: None,
    }
}

fn i11() -> IdentitySpec {
    IdentitySpec {
        id: "I11",
        description: "erf(√(at)) = 2/(√π Γ(b)) ∫₀^{π/2} γ(1/2+b, at·sec²θ) sin^{2b−1}θ dθ \
                      = 1 − (2/π)∫₀^{π/2} e^{−at sec²θ} dθ",
        params: vec![
            param("a", &SHAPES),
            param("t", &with_zero(log_grid())),
            param("b", &[0.5, 1.0, 2.0]),
        ],
        uses_pair: false,
        constraint: "a > 0, t >= 0, b > 0",
        domain: |p| {
            require(p["a"] > 0.0, "a must be positive")?;
            require(p["t"] >= 0.0, "t must be non-negative")?;
            require(p["b"] > 0.0, "b must be positive")
        },
        routes: vec![
            route("kernel", |p, _| ok(erf((p["a"] * p["t"]).sqrt())?)),
            route("sec-form", |p, cfg| {
                let x = p["a"] * p["t"];
                let q = integrate_theta(
                    |n| {
                        let (_, c) = theta_sin_cos(n);
                        (-x / (c * c)).exp()
                    },
                    cfg,
                )?;
                let v = 1.0 - FRAC_2_PI * q.value;
                ok(EvalResult::new(v, FRAC_2_PI * q.abs_err + EPS, Method::Quadrature, q.evals))
            }),
            route("general-b", |p, cfg| {
                let (x, b) = (p["a"] * p["t"], p["b"]);
                let g = gamma_fn(0.5 + b)?;
                let q = integrate_theta(
                    |n| {
                        let (s, c) = theta_sin_cos(n);
                        lower_gamma_saturating(g, 0.5 + b, x / (c * c)) * s.powf(2.0 * b - 1.0)
                    },
                    cfg,
                )?;
                ok(q.scaled(2.0 / (PI.sqrt() * gamma_fn(b)?)))
            }),
        ],
        tol_rel: 1e-8,
        // t = 0: the sec-form is 1 minus a quadrature of π/2
        tol_abs: 1e-12,
        quad: quad(1e-12, 10),
        note: None,
    }
}

fn i12() -> IdentitySpec {
    IdentitySpec {
        id: "I12",
        description: "e^{at} erfc(√(at)) = (2/π)∫₀^{π/2} e^{−at tan²θ} dθ",
        params: vec![param("a", &SHAPES), param("t", &with_zero(log_grid()))],
        uses_pair: false,
        constraint: "a > 0, t >= 0",
        domain: |p| {
            require(p["a"] > 0.0, "a must be positive")?;
            require(p["t"] >= 0.0, "t must be non-negative")
        },
        routes: vec![
            route("kernel", |p, _| ok(erfcx((p["a"] * p["t"]).sqrt())?)),
            route("tan-form", |p, cfg| {
                let x = p["a"] * p["t"];
                let q = integrate_theta(
                    |n| {
                        let (s, c) = theta_sin_cos(n);
                        let tan = s / c;
                        (-x * tan * tan).exp()
                    },
                    cfg,
                )?;
                ok(q.scaled(FRAC_2_PI))
            }),
            // e^{at} times the sec form; only while e^{at} is representable
            route("scaled-sec-form", |p, cfg| {
                let x = p["a"] * p["t"];
                if x > 700.0 {
                    return Ok(RouteOutcome::NotApplicable(format!("e^{x} overflows")));
                }
                let q = integrate_theta(
                    |n| {
                        let (_, c) = theta_sin_cos(n);
                        (-x / (c * c)).exp()
                    },
                    cfg,
                )?;
                ok(q.scaled(FRAC_2_PI * x.exp()))
            }),
        ],
        tol_rel: 1e-8,
        tol_abs: 0.0,
        quad: quad(1e-12, 10),
        note: None,
    }
}

fn plain_domain(p: &Point) -> std::result::Result<(), String> {
    let a = p["a"];
    require(a > 0.0, "a must be positive")?;
    let pair = p.pair();
    require(
        pair.sigma0() < a * a,
        &format!("{pair}: sigma0 = {} must be below a² = {}", pair.sigma0(), a * a),
    )
}

fn i13() -> IdentitySpec {
    IdentitySpec {
        id: "I13",
        description: "∫₀^∞ f(t) erfc(a√t) dt = (2/π)∫₀^{π/2} F(a² sec²θ) dθ \
                      = (2a/π)∫_a^∞ F(s²)/(s√(s²−a²)) ds",
        params: vec![param("a", &SCALES)],
        uses_pair: true,
        constraint: "a > 0, sigma0 < a²",
        domain: plain_domain,
        routes: vec![
            route("theta", |p, cfg| ok(erfc_weighted_integral(p.pair(), p["a"], ReductionForm::Theta, cfg)?)),
            route("s", |p, cfg| ok(erfc_weighted_integral(p.pair(), p["a"], ReductionForm::S, cfg)?)),
            route("time", |p, cfg| {
                ok(erfc_weighted_integral(p.pair(), p["a"], ReductionForm::TimeDomain, cfg)?)
            }),
        ],
        tol_rel: 1e-7,
        tol_abs: 0.0,
        quad: quad(1e-10, 10),
        note: None,
    }
}

fn power_pair(r: f64) -> Result<TransformPair> {
    make_power(r)
}

fn i14() -> IdentitySpec {
    IdentitySpec {
        id: "I14",
        description: "∫₀^∞ t^r erfc(a√t) dt = Γ(r+3/2)/(a^{2r+2}√π(1+r)); \
                      ∫₀^∞ t^μ erfc(at) dt = Γ(1+μ/2)/(√π a^{μ+1}(1+μ))",
        params: vec![param("r", &[-0.5, 0.0, 0.5, 1.0, 2.0]), param("a", &[0.5, 1.0, 3.0])],
        uses_pair: false,
        constraint: "r > -1, a > 0",
        domain: |p| {
            require(p["r"] > -1.0, "r must exceed -1")?;
            require(p["a"] > 0.0, "a must be positive")
        },
        routes: vec![
            route("closed", |p, _| ok_closed(erfc_moment(p["r"], p["a"])?)),
            // t = u² turns the first moment into twice a linear moment of order 2r+1
            route("linear-closed", |p, _| ok_closed(2.0 * erfc_linear_moment(2.0 * p["r"] + 1.0, p["a"])?)),
            route("theta", |p, cfg| {
                ok(erfc_weighted_integral(&power_pair(p["r"])?, p["a"], ReductionForm::Theta, cfg)?)
            }),
            route("s", |p, cfg| {
                ok(erfc_weighted_integral(&power_pair(p["r"])?, p["a"], ReductionForm::S, cfg)?)
            }),
            route("time", |p, cfg| {
                ok(erfc_weighted_integral(&power_pair(p["r"])?, p["a"], ReductionForm::TimeDomain, cfg)?)
            }),
            route("linear-time", |p, cfg| {
                let (mu, a) = (2.0 * p["r"] + 1.0, p["a"]);
                let f = |u: f64| {
                    let v = erfcx(a * u).map(|e| e.value).unwrap_or(f64::NAN);
                    // u^μ e^{−a²u²} in one exponent: the factors overflow and underflow far out
                    let damp = if u == 0.0 { u.powf(mu) } else { (mu * u.ln() - (a * u) * (a * u)).exp() };
                    damp * v
                };
                let domain = IntervalSpec::half_infinite(0.0).singular_lower(mu < 0.0);
                ok(integrate(f, &domain, cfg)?.scaled(2.0))
            }),
        ],
        tol_rel: 1e-8,
        tol_abs: 0.0,
        quad: quad(1e-11, 10),
        note: None,
    }
}

fn exp_route(p: &Point, form: ReductionForm, cfg: &QuadConfig) -> Result<RouteOutcome> {
    if let Some(why) = exp_form_guard(p.pair(), form) {
        return Ok(RouteOutcome::NotApplicable(why));
    }
    ok(erfc_weighted_exp_integral(p.pair(), p["a"], form, cfg)?)
}

fn i15() -> IdentitySpec {
    IdentitySpec {
        id: "I15",
        description: "∫₀^∞ e^{a²t} f(t) erfc(a√t) dt = (2/π)∫₀^{π/2} F(a² tan²θ) dθ \
                      = (2a/π)∫₀^∞ F(s²)/(s²+a²) ds",
        params: vec![param("a", &SCALES)],
        uses_pair: true,
        constraint: "a > 0; each route only where its integral exists",
        domain: |p| require(p["a"] > 0.0, "a must be positive"),
        routes: vec![
            route("theta", |p, cfg| exp_route(p, ReductionForm::Theta, cfg)),
            route("s", |p, cfg| exp_route(p, ReductionForm::S, cfg)),
            route("time", |p, cfg| exp_route(p, ReductionForm::TimeDomain, cfg)),
        ],
        tol_rel: 1e-7,
        tol_abs: 0.0,
        quad: quad(1e-10, 12),
        note: Some(
            "theta-form needs sigma0 < 0 (F is evaluated down to s = 0); the s-form runs from s = 0 \
             and needs F(s²) integrable there; the time-domain integral needs f(t)/√t integrable at infinity",
        ),
    }
}

fn i16() -> IdentitySpec {
    IdentitySpec {
        id: "I16",
        description: "∫₀^∞ t^r e^{a²t} erfc(a√t) dt = (2aΓ(r+1)/π) ∫₀^∞ ds / (s^{2r+2}(s²+a²))",
        params: vec![param("r", &[-0.9, -0.75, -0.6]), param("a", &SCALES)],
        uses_pair: false,
        constraint: "-1 < r < -1/2, a > 0",
        domain: |p| {
            require(p["r"] > -1.0, "r must exceed -1 (the integrand t^r is not integrable at 0)")?;
            require(
                p["r"] < -0.5,
                "r >= -1/2 excluded: the integrand behaves like t^(r-1/2)/(a√π) as t → ∞ and the left side diverges",
            )?;
            require(p["a"] > 0.0, "a must be positive")
        },
        routes: vec![
            route("s-domain", |p, cfg| ok(exp_erfc_moment_rhs(p["r"], p["a"], cfg)?)),
            route("time", |p, cfg| ok(exp_erfc_moment_time(p["r"], p["a"], cfg)?)),
            route("closed", |p, _| ok_closed(exp_erfc_moment_closed(p["r"], p["a"])?)),
        ],
        tol_rel: 1e-6,
        tol_abs: 0.0,
        quad: quad(1e-9, 12),
        note: Some(
            "restricted to -1 < r < -1/2: for r >= -1/2 the left side diverges because \
             t^r e^{a²t} erfc(a√t) ~ t^(r-1/2)/(a√π) as t → ∞, although the s-integral still converges",
        ),
    }
}

fn positive_ab(p: &Point) -> std::result::Result<(), String> {
    require(p["a"] > 0.0, "a must be positive")?;
    require(p["b"] > 0.0, "b must be positive")
}

fn i17() -> IdentitySpec {
    IdentitySpec {
        id: "I17",
        description: "∫_a^∞ e^{−b²t²} / (t√(t²−a²)) dt = (π/2a) erfc(ab)",
        params: vec![param("a", &SCALES), param("b", &SCALES)],
        uses_pair: false,
        constraint: "a > 0, b > 0",
        domain: positive_ab,
        routes: vec![
            route("quadrature", |p, cfg| ok(gauss_singular_integral(p["a"], p["b"], cfg)?)),
            route("closed", |p, _| ok_closed(gauss_singular_closed(p["a"], p["b"])?)),
            // s-form of the plain reduction for δ(t − b²), via the cosh substitution
            route("laplace-s", |p, cfg| {
                let (a, b) = (p["a"], p["b"]);
                let r = erfc_weighted_integral(&make_dirac(b * b)?, a, ReductionForm::S, cfg)?;
                ok(r.scaled(PI / (2.0 * a)))
            }),
        ],
        tol_rel: 1e-9,
        tol_abs: 0.0,
        quad: quad(1e-12, 10),
        note: None,
    }
}

fn i18() -> IdentitySpec {
    IdentitySpec {
        id: "I18",
        description: "∫₀^∞ e^{−b²t²} / (t²+a²) dt = (π/2a) e^{a²b²} erfc(ab)",
        params: vec![param("a", &SCALES), param("b", &SCALES)],
        uses_pair: false,
        constraint: "a > 0, b > 0",
        domain: positive_ab,
        routes: vec![
            route("quadrature", |p, cfg| ok(gauss_lorentz_integral(p["a"], p["b"], cfg)?)),
            route("closed", |p, _| ok_closed(gauss_lorentz_closed(p["a"], p["b"])?)),
            // theta-form of the exponentially weighted reduction for δ(t − b²)
            route("laplace-theta", |p, cfg| {
                let (a, b) = (p["a"], p["b"]);
                let r = erfc_weighted_exp_integral(&make_dirac(b * b)?, a, ReductionForm::Theta, cfg)?;
                ok(r.scaled(PI / (2.0 * a)))
            }),
        ],
        tol_rel: 1e-9,
        tol_abs: 0.0,
        quad: quad(1e-12, 10),
        note: None,
    }
}

fn i19() -> IdentitySpec {
    IdentitySpec {
        id: "I19",
        description: "Γ(a)Γ(1−a) = π csc(πa)",
        params: vec![param("a", &UNIT_INTERVAL)],
        uses_pair: false,
        constraint: "0 < a < 1",
        domain: |p| require(p["a"] > 0.0 && p["a"] < 1.0, "a must lie in (0, 1)"),
        routes: vec![
            route("product", |p, _| ok_closed(gamma_fn(p["a"])? * gamma_fn(1.0 - p["a"])?)),
            route("closed", |p, _| ok_closed(PI / (PI * p["a"]).sin())),
        ],
        tol_rel: 1e-12,
        tol_abs: 0.0,
        quad: QuadConfig::default(),
        note: None,
    }
}

/// All identities, I1 through I19.
pub fn catalog() -> &'static [IdentitySpec] {
    static CATALOG: OnceLock<Vec<IdentitySpec>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        vec![
            i1(),
            i2(),
            i3(),
            i4(),
            i5(),
            i6(),
            i7(),
            i8(),
            i9(),
            i10(),
            i11(),
            i12(),
            i13(),
            i14(),
            i15(),
            i16(),
            i17(),
            i18(),
            i19(),
        ]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{run_grid, run_identity, Grid};
    use crate::Error;

    #[test]
    fn ids_are_unique_and_ordered() {
        let ids: Vec<&str> = catalog().iter().map(|s| s.id).collect();
        let want: Vec<String> = (1..=19).map(|k| format!("I{k}")).collect();
        assert_eq!(ids, want);
    }

    #[test]
    fn every_identity_has_two_routes() {
        for s in catalog() {
            assert!(s.routes.len() >= 2, "{}", s.id);
            s.quad.validate().unwrap();
        }
    }

    #[test]
    fn log_grid_shape() {
        let g = log_grid();
        assert_eq!(g.len(), 15);
        assert_eq!((g[0], g[14]), (0.01, 50.0));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn documented_domains() {
        let i7 = catalog().iter().find(|s| s.id == "I7").unwrap();
        assert_eq!(i7.param_names(), vec!["a", "b", "t"]);
        assert_eq!(i7.constraint, "a > 0, b > 0, t >= 0");
        assert_eq!(catalog()[3].constraint, "a < 0, a + b > 0");
        assert_eq!(catalog()[9].constraint, "-1 < a < 0");
    }

    #[test]
    fn single_points() {
        let r = run_identity("I2", &[("x", 1.0)], None, None).unwrap();
        assert!(r.pass && r.abs_diff <= 1e-12);
        let r = run_identity("I8", &[("a", 0.5), ("b", 0.5)], None, None).unwrap();
        assert!(r.pass);
        assert!((r.lhs_value - PI).abs() < 1e-14);
        let r = run_identity("I17", &[("a", 1.0), ("b", 1.0)], None, None).unwrap();
        assert!(r.pass, "{r:?}");
        assert!((r.lhs_value - 0.247_085_016_642_337_8).abs() < 1e-9);
        let e = run_identity("I4", &[("a", 0.5), ("b", 1.0)], None, None).unwrap_err();
        assert!(matches!(&e, Error::Domain(m) if m.contains("a must be negative")), "{e}");
    }

    #[test]
    fn i1_default_grid() {
        let run = run_grid("I1", &Grid::default()).unwrap();
        assert_eq!(run.records.len(), 75);
        assert_eq!(run.failed(), 0);
    }

    #[test]
    fn i16_default_grid_stays_in_window() {
        let run = run_grid("I16", &Grid::default()).unwrap();
        assert!(run.records.iter().all(|r| {
            let x = r.param("r").unwrap();
            x > -1.0 && x < -0.5
        }));
        let mut g = Grid::default();
        g.set("r", vec![-0.75, -0.25, 0.0]);
        let run = run_grid("I16", &g).unwrap();
        assert_eq!(run.records.len(), 3);
        assert_eq!(run.skipped.len(), 6);
        assert!(run.skipped[0].reason.contains("diverges"));
    }

    #[test]
    fn empty_grid_is_reported() {
        let mut g = Grid::default();
        g.set("a", vec![0.5]);
        assert!(matches!(run_grid("I10", &g), Err(Error::Domain(_))));
    }
}
