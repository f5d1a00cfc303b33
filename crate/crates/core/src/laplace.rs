//! Named Laplace-transform pairs f(t) ↔ F(s) = ∫₀^∞ f(t) e^{−st} dt.
//!
//! Pairs are immutable values. The built-in registry is created once and
//! shared read-only.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{gamma_fn, EvalResult};
use crate::quad::{integrate, IntervalSpec, QuadConfig};
use crate::record::{CheckRecord, Param, RouteValue};

/// Relative tolerance of the pair self-check.
pub const PAIR_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TimeKind {
    Ordinary,
    Dirac,
}

/// The family a pair belongs to, with its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairKind {
    /// t^r ↔ Γ(r+1)/s^{r+1}
    Power { r: f64 },
    /// e^{ct} ↔ 1/(s−c)
    Exponential { c: f64 },
    /// δ(t−b) ↔ e^{−bs}
    Dirac { b: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformPair {
    kind: PairKind,
    // Γ(r+1) for power pairs, cached at construction.
    scale: f64,
}

pub fn make_power(r: f64) -> Result<TransformPair> {
    if !r.is_finite() || r <= -1.0 {
        return Err(Error::domain(format!("power pair requires r > -1, got {r}")));
    }
    Ok(TransformPair {
        kind: PairKind::Power { r },
        scale: gamma_fn(r + 1.0)?,
    })
}

pub fn make_exponential(c: f64) -> Result<TransformPair> {
    if !c.is_finite() {
        return Err(Error::domain(format!("exponential pair requires finite c, got {c}")));
    }
    Ok(TransformPair {
        kind: PairKind::Exponential { c },
        scale: 1.0,
    })
}

pub fn make_dirac(b: f64) -> Result<TransformPair> {
    if !b.is_finite() || b <= 0.0 {
        return Err(Error::domain(format!("dirac pair requires b > 0, got {b}")));
    }
    Ok(TransformPair {
        kind: PairKind::Dirac { b },
        scale: 1.0,
    })
}

impl TransformPair {
    pub fn kind(&self) -> PairKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            PairKind::Power { .. } => "power",
            PairKind::Exponential { .. } => "exp",
            PairKind::Dirac { .. } => "dirac",
        }
    }

    pub fn params(&self) -> Vec<Param> {
        match self.kind {
            PairKind::Power { r } => vec![Param::new("r", r)],
            PairKind::Exponential { c } => vec![Param::new("c", c)],
            PairKind::Dirac { b } => vec![Param::new("b", b)],
        }
    }

    pub fn time_kind(&self) -> TimeKind {
        match self.kind {
            PairKind::Dirac { .. } => TimeKind::Dirac,
            _ => TimeKind::Ordinary,
        }
    }

    /// Abscissa of convergence; `-inf` for dirac pairs.
    pub fn sigma0(&self) -> f64 {
        match self.kind {
            PairKind::Power { .. } => 0.0,
            PairKind::Exponential { c } => c,
            PairKind::Dirac { .. } => f64::NEG_INFINITY,
        }
    }

    pub fn impulse_location(&self) -> Option<f64> {
        match self.kind {
            PairKind::Dirac { b } => Some(b),
            _ => None,
        }
    }

    /// True when f(t) is unbounded as t → 0⁺.
    pub fn singular_at_zero(&self) -> bool {
        matches!(self.kind, PairKind::Power { r } if r < 0.0)
    }

    /// f(t) for t > 0; `None` for dirac pairs.
    pub fn time_value(&self, t: f64) -> Option<f64> {
        self.time_damped(t, 0.0)
    }

    /// f(t)·e^{−kt}, formed without overflowing the two factors separately.
    pub fn time_damped(&self, t: f64, k: f64) -> Option<f64> {
        match self.kind {
            PairKind::Power { r } => {
                let v = t.powf(r) * (-k * t).exp();
                // inf·0 far out in the tail
                Some(if v.is_nan() { (r * t.ln() - k * t).exp() } else { v })
            }
            PairKind::Exponential { c } => Some(((c - k) * t).exp()),
            PairKind::Dirac { .. } => None,
        }
    }

    /// F(s); s must exceed `sigma0`.
    pub fn transform(&self, s: f64) -> Result<f64> {
        if s.is_nan() || s <= self.sigma0() {
            return Err(Error::domain(format!(
                "{self}: F(s) needs s > sigma0 = {}, got s = {s}",
                self.sigma0()
            )));
        }
        Ok(self.transform_unchecked(s))
    }

    /// F(s) without the abscissa check; F(+inf) = 0.
    pub(crate) fn transform_unchecked(&self, s: f64) -> f64 {
        if s == f64::INFINITY {
            return 0.0;
        }
        match self.kind {
            PairKind::Power { r } => self.scale * s.powf(-(r + 1.0)),
            PairKind::Exponential { c } => 1.0 / (s - c),
            PairKind::Dirac { b } => (-b * s).exp(),
        }
    }
}

impl fmt::Display for TransformPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params()[0];
        write!(f, "{}({}={})", self.name(), p.name, p.value)
    }
}

/// Parses `name(k=v,...)`, e.g. `power(r=-0.5)`, `exp(c=-1)`, `dirac(b=1)`.
pub fn parse_pair(text: &str) -> Result<TransformPair> {
    let text = text.trim();
    let bad = || Error::Parse(format!("expected name(param=value), got {text:?}"));
    let open = text.find('(').ok_or_else(bad)?;
    let inner = text[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let name = text[..open].trim();

    let mut args = Vec::new();
    for item in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(bad)?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{name}: {k} = {v:?} is not a number")))?;
        args.push((k.trim(), v));
    }
    let (key, make): (&str, fn(f64) -> Result<TransformPair>) = match name {
        "power" => ("r", make_power),
        "exp" | "exponential" => ("c", make_exponential),
        "dirac" => ("b", make_dirac),
        _ => return Err(Error::Parse(format!("unknown pair {name:?} (power, exp, dirac)"))),
    };
    match args.as_slice() {
        [(k, v)] if *k == key => make(*v),
        _ => Err(Error::Parse(format!("{name} takes exactly one parameter {key}"))),
    }
}

/// The built-in pairs.
pub fn registry() -> &'static [TransformPair] {
    static REGISTRY: OnceLock<Vec<TransformPair>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut v = Vec::new();
        for r in [-0.75, -0.5, 0.0, 1.0, 2.0] {
            v.push(make_power(r).expect("valid power"));
        }
        for c in [-1.0, 0.5] {
            v.push(make_exponential(c).expect("valid exponential"));
        }
        for b in [0.25, 1.0] {
            v.push(make_dirac(b).expect("valid dirac"));
        }
        v
    })
}

/// Five geometric points on [σ + 1, σ + 100] with σ = max(sigma0, 0).
pub fn verification_grid(p: &TransformPair) -> Vec<f64> {
    let lo = p.sigma0().max(0.0) + 1.0;
    let hi = lo + 99.0;
    (0..5).map(|k| lo * (hi / lo).powf(k as f64 / 4.0)).collect()
}

/// Checks F(s) against quadrature of the defining integral on the pair's grid.
pub fn verify_pair(p: &TransformPair, cfg: &QuadConfig) -> Result<Vec<CheckRecord>> {
    verify_pair_at(p, &verification_grid(p), cfg)
}

/// As [`verify_pair`] at caller-chosen points.
pub fn verify_pair_at(p: &TransformPair, s_values: &[f64], cfg: &QuadConfig) -> Result<Vec<CheckRecord>> {
    if p.time_kind() == TimeKind::Dirac {
        return Err(Error::Unsupported(format!(
            "{p} has no time-domain function to integrate"
        )));
    }
    s_values
        .iter()
        .map(|&s| {
            let closed = p.transform(s)?;
            let domain = IntervalSpec::half_infinite(0.0).singular_lower(p.singular_at_zero());
            let quad = integrate(|t| p.time_damped(t, s).unwrap_or(f64::NAN), &domain, cfg)?;
            Ok(CheckRecord::compare(
                "laplace-pair",
                vec![Param::new("s", s)],
                Some(p.to_string()),
                vec![
                    RouteValue::new("quadrature", quad),
                    RouteValue::new("closed", EvalResult::closed(closed)),
                ],
                PAIR_TOL,
                0.0,
            ))
        })
        .collect()
}
