//! Double-exponential quadrature.
//!
//! Finite intervals use the tanh-sinh map x = mid + half·tanh(π/2·sinh t);
//! half-infinite intervals [lo, ∞) use exp-sinh, x = lo + exp(π/2·sinh t).
//! Both push the abscissae towards the endpoints doubly exponentially, so
//! integrable endpoint singularities need no special treatment beyond
//! evaluating the integrand accurately there.
//!
//! For that reason every node also carries its distance to each endpoint,
//! computed directly from the transform rather than by subtracting two
//! nearly equal numbers. Integrands that blow up like a power of the
//! distance to an endpoint should use [`integrate_nodes`] and work from
//! [`Node::from_lower`] / [`Node::from_upper`].
//!
//! The step is halved once per level. The error estimate is the difference
//! between consecutive levels plus a rounding floor, and convergence is only
//! accepted once two consecutive levels both meet the tolerance.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{EvalResult, Method};

/// Tolerances and budget for one quadrature run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_level: u32,
    pub max_evals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_level: 10,
            max_evals: 100_000,
        }
    }
}

impl QuadConfig {
    pub const MIN_REL_TOL: f64 = 1e-15;
    pub const MIN_ABS_TOL: f64 = 1e-300;
    pub const MAX_LEVEL: u32 = 12;

    pub fn new(rel_tol: f64, abs_tol: f64, max_level: u32, max_evals: usize) -> Result<Self> {
        let cfg = QuadConfig {
            rel_tol,
            abs_tol,
            max_level,
            max_evals,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Default configuration with a different relative tolerance.
    pub fn with_rel_tol(rel_tol: f64) -> Result<Self> {
        let cfg = QuadConfig {
            rel_tol,
            ..QuadConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.rel_tol.is_finite() || self.rel_tol < Self::MIN_REL_TOL {
            return Err(Error::domain(format!("rel_tol must be >= 1e-15, got {}", self.rel_tol)));
        }
        if !self.abs_tol.is_finite() || self.abs_tol < Self::MIN_ABS_TOL {
            return Err(Error::domain(format!("abs_tol must be >= 1e-300, got {}", self.abs_tol)));
        }
        if self.max_level == 0 || self.max_level > Self::MAX_LEVEL {
            return Err(Error::domain(format!(
                "max_level must be in 1..=12, got {}",
                self.max_level
            )));
        }
        if self.max_evals == 0 {
            return Err(Error::domain("max_evals must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntervalKind {
    Finite,
    HalfInfinite,
}

/// Integration domain. `upper` is ignored for half-infinite intervals.
///
/// The singular flags tell the engine that the integrand may be unbounded
/// (but integrable) at that endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalSpec {
    pub kind: IntervalKind,
    pub lower: f64,
    pub upper: f64,
    pub singular_lower: bool,
    pub singular_upper: bool,
}

impl IntervalSpec {
    pub fn finite(lower: f64, upper: f64) -> Self {
        IntervalSpec {
            kind: IntervalKind::Finite,
            lower,
            upper,
            singular_lower: false,
            singular_upper: false,
        }
    }

    pub fn half_infinite(lower: f64) -> Self {
        IntervalSpec {
            kind: IntervalKind::HalfInfinite,
            lower,
            upper: f64::INFINITY,
            singular_lower: false,
            singular_upper: false,
        }
    }

    /// [0, π/2] with both endpoints flagged singular.
    pub fn theta() -> Self {
        IntervalSpec::finite(0.0, FRAC_PI_2).singular_lower(true).singular_upper(true)
    }

    pub fn singular_lower(mut self, on: bool) -> Self {
        self.singular_lower = on;
        self
    }

    pub fn singular_upper(mut self, on: bool) -> Self {
        self.singular_upper = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.lower.is_finite() {
            return Err(Error::domain(format!("lower limit must be finite, got {}", self.lower)));
        }
        if self.kind == IntervalKind::Finite {
            if !self.upper.is_finite() {
                return Err(Error::domain("finite interval needs a finite upper limit"));
            }
            if self.lower >= self.upper {
                return Err(Error::domain(format!(
                    "finite interval needs lower < upper, got [{}, {}]",
                    self.lower, self.upper
                )));
            }
        }
        Ok(())
    }
}

/// One quadrature abscissa.
///
/// `from_lower` and `from_upper` are the distances to the two endpoints
/// (`from_upper` is infinite on half-infinite intervals). The smaller of the
/// two is accurate to a few ulps even when it is far below the spacing of
/// floats around `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    pub from_lower: f64,
    pub from_upper: f64,
}

/// (sin θ, cos θ) for a node of the θ-domain [0, π/2], accurate near both ends.
pub fn theta_sin_cos(node: Node) -> (f64, f64) {
    if node.from_lower <= node.from_upper {
        let (s, c) = node.from_lower.sin_cos();
        (s, c)
    } else {
        let (s, c) = node.from_upper.sin_cos();
        (c, s)
    }
}

// exp(-690) ~ 1e-300: the transforms stop before distances underflow.
const LOG_REACH: f64 = 690.0;
const ROUNDING_FLOOR: f64 = 4.0 * f64::EPSILON;

#[derive(Clone, Copy)]
enum Side {
    Lower,
    Upper,
    Middle,
}

struct Rule {
    kind: IntervalKind,
    lower: f64,
    upper: f64,
    half: f64,
    t_max: f64,
}

impl Rule {
    fn new(domain: &IntervalSpec) -> Self {
        match domain.kind {
            IntervalKind::Finite => Rule {
                kind: IntervalKind::Finite,
                lower: domain.lower,
                upper: domain.upper,
                half: 0.5 * (domain.upper - domain.lower),
                // 1 - |tanh u| = 2e^{-2u}/(1+e^{-2u}) reaches e^{-690}
                t_max: (LOG_REACH / std::f64::consts::PI).asinh(),
            },
            IntervalKind::HalfInfinite => Rule {
                kind: IntervalKind::HalfInfinite,
                lower: domain.lower,
                upper: f64::INFINITY,
                half: 1.0,
                t_max: (LOG_REACH / FRAC_PI_2).asinh(),
            },
        }
    }

    /// Node and Jacobian weight at parameter t.
    fn node(&self, t: f64) -> (Node, f64, Side) {
        match self.kind {
            IntervalKind::Finite => {
                let u = FRAC_PI_2 * t.sinh();
                let e = (-2.0 * u.abs()).exp();
                // distance from ±1 in the normalized variable
                let d = 2.0 * e / (1.0 + e);
                let w = FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
                let width = self.upper - self.lower;
                let gap = self.half * d;
                let (node, side) = if t > 0.0 {
                    (
                        Node {
                            x: self.upper - gap,
                            from_lower: width - gap,
                            from_upper: gap,
                        },
                        Side::Upper,
                    )
                } else if t < 0.0 {
                    (
                        Node {
                            x: self.lower + gap,
                            from_lower: gap,
                            from_upper: width - gap,
                        },
                        Side::Lower,
                    )
                } else {
                    (
                        Node {
                            x: self.lower + self.half,
                            from_lower: self.half,
                            from_upper: self.half,
                        },
                        Side::Middle,
                    )
                };
                (node, self.half * w, side)
            }
            IntervalKind::HalfInfinite => {
                let v = FRAC_PI_2 * t.sinh();
                let gap = v.exp();
                let w = gap * FRAC_PI_2 * t.cosh();
                let side = if t < 0.0 { Side::Lower } else { Side::Middle };
                (
                    Node {
                        x: self.lower + gap,
                        from_lower: gap,
                        from_upper: f64::INFINITY,
                    },
                    w,
                    side,
                )
            }
        }
    }
}

struct Accumulator<'a, F> {
    f: &'a F,
    rule: &'a Rule,
    domain: &'a IntervalSpec,
    evals: usize,
    max_evals: usize,
}

impl<F: Fn(Node) -> f64> Accumulator<'_, F> {
    /// Weighted sum and absolute weighted sum over the given t values.
    fn sum(&mut self, ts: impl Iterator<Item = f64>) -> Result<Option<(f64, f64)>> {
        let mut sum = 0.0;
        let mut l1 = 0.0;
        for t in ts {
            if self.evals >= self.max_evals {
                return Ok(None);
            }
            let (node, w, side) = self.rule.node(t);
            self.evals += 1;
            if w == 0.0 {
                continue;
            }
            let mut y = (self.f)(node);
            if !y.is_finite() {
                if self.clampable(node, side, t) {
                    y = 0.0;
                } else {
                    return Err(Error::Integrand {
                        x: node.x,
                        value: y,
                    });
                }
            }
            let c = w * y;
            if !c.is_finite() {
                return Err(Error::Integrand { x: node.x, value: y });
            }
            sum += c;
            l1 += c.abs();
        }
        Ok(Some((sum, l1)))
    }

    /// Non-finite values are tolerated only within one level-0 spacing of a
    /// flagged endpoint, or where the abscissa has collapsed onto it.
    fn clampable(&self, node: Node, side: Side, t: f64) -> bool {
        let near_edge = t.abs() >= self.rule.t_max - 1.0;
        match side {
            Side::Lower => {
                self.domain.singular_lower && (near_edge || node.x == self.domain.lower)
            }
            Side::Upper => {
                self.domain.singular_upper && (near_edge || node.x == self.domain.upper)
            }
            Side::Middle => false,
        }
    }
}

/// Integrates `f` over `domain`; `f` receives full [`Node`] information.
pub fn integrate_nodes<F>(f: F, domain: &IntervalSpec, cfg: &QuadConfig) -> Result<EvalResult>
where
    F: Fn(Node) -> f64,
{
    domain.validate()?;
    cfg.validate()?;
    let rule = Rule::new(domain);
    let mut acc = Accumulator {
        f: &f,
        rule: &rule,
        domain,
        evals: 0,
        max_evals: cfg.max_evals,
    };

    let t_max = rule.t_max;
    let k_max = t_max.floor() as i64;
    let level0 = (-k_max..=k_max).map(|k| k as f64);
    let (mut sum, mut l1) = match acc.sum(level0)? {
        Some(v) => v,
        None => return Err(exhausted(0.0, f64::INFINITY, acc.evals)),
    };
    let mut h = 1.0;
    let mut estimate = sum;
    let mut last_err = f64::INFINITY;
    let mut prev_ok = false;

    for level in 1..=cfg.max_level {
        h *= 0.5;
        // new nodes: odd multiples of h inside [-t_max, t_max]
        let n = (t_max / h).floor() as i64;
        let odd = (-n..=n).filter(|k| k % 2 != 0).map(|k| k as f64 * h);
        let Some((s, a)) = acc.sum(odd)? else {
            return Err(exhausted(estimate, last_err, acc.evals));
        };
        sum += s;
        l1 += a;
        let next = h * sum;
        let diff = (next - estimate).abs();
        let err = diff + ROUNDING_FLOOR * h * l1;
        estimate = next;
        last_err = err;
        let ok = err <= cfg.abs_tol.max(cfg.rel_tol * estimate.abs());
        if ok && prev_ok && level >= 2 {
            return Ok(EvalResult::new(estimate, err, Method::Quadrature, acc.evals));
        }
        prev_ok = ok;
    }
    Err(exhausted(estimate, last_err, acc.evals))
}

fn exhausted(best: f64, abs_err: f64, evals: usize) -> Error {
    Error::NotConverged {
        what: "quadrature".into(),
        best,
        abs_err,
        evals,
    }
}

/// Integrates a plain function of x over `domain`.
pub fn integrate<F>(f: F, domain: &IntervalSpec, cfg: &QuadConfig) -> Result<EvalResult>
where
    F: Fn(f64) -> f64,
{
    integrate_nodes(|n| f(n.x), domain, cfg)
}

/// Integrates over θ ∈ [0, π/2] with both endpoints flagged singular.
///
/// Use [`theta_sin_cos`] inside `f` to get sin θ and cos θ with full
/// relative accuracy near the endpoints.
pub fn integrate_theta<F>(f: F, cfg: &QuadConfig) -> Result<EvalResult>
where
    F: Fn(Node) -> f64,
{
    integrate_nodes(f, &IntervalSpec::theta(), cfg)
}

/// The best estimate carried by a convergence failure, if any.
pub fn best_estimate(err: &Error) -> Option<f64> {
    match err {
        Error::NotConverged { best, .. } if best.is_finite() => Some(*best),
        _ => None,
    }
}
