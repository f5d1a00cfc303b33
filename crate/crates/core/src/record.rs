use serde::{Deserialize, Serialize};

use crate::kernel::EvalResult;

/// Denominator floor for relative differences.
pub const TINY_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Param {
    pub name: String,
    pub value: f64,
}

impl Param {
    pub fn new(name: impl Into<String>, value: f64) -> Self {
        Param {
            name: name.into(),
            value,
        }
    }
}

/// The value one evaluation route produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteValue {
    pub route: String,
    pub value: f64,
    pub abs_err: f64,
}

impl RouteValue {
    pub fn new(route: impl Into<String>, r: EvalResult) -> Self {
        RouteValue {
            route: route.into(),
            value: r.value,
            abs_err: r.abs_err,
        }
    }
}

/// Outcome of checking one identity at one parameter point.
///
/// With more than two routes the comparison is pairwise: `abs_diff` is the
/// largest difference between any two routes, `lhs_value` is the first
/// route and `rhs_value` the route furthest from it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub identity: String,
    pub params: Vec<Param>,
    /// Non-numeric parameter of the point, such as a transform pair.
    pub case: Option<String>,
    pub lhs_value: f64,
    pub rhs_value: f64,
    pub abs_diff: f64,
    pub rel_diff: f64,
    pub pass: bool,
    pub lhs_err: f64,
    pub rhs_err: f64,
    pub tol_rel: f64,
    pub tol_abs: f64,
    pub wall_time: f64,
    pub routes: Vec<RouteValue>,
    /// Why the check failed when a route could not be evaluated.
    pub reason: Option<String>,
}

impl CheckRecord {
    /// Compares two or more route values.
    pub fn compare(
        identity: &str,
        params: Vec<Param>,
        case: Option<String>,
        routes: Vec<RouteValue>,
        tol_rel: f64,
        tol_abs: f64,
    ) -> Self {
        assert!(routes.len() >= 2, "a check needs at least two routes");
        let mut abs_diff = 0.0f64;
        for (i, a) in routes.iter().enumerate() {
            for b in &routes[i + 1..] {
                abs_diff = abs_diff.max((a.value - b.value).abs());
            }
        }
        // opposite-signed values near f64::MAX; keep the record serializable
        let abs_diff = abs_diff.min(f64::MAX);
        let scale = routes
            .iter()
            .map(|r| r.value.abs())
            .fold(TINY_FLOOR, f64::max);
        let rel_diff = abs_diff / scale;
        let lhs = &routes[0];
        let rhs = routes[1..]
            .iter()
            .max_by(|a, b| {
                (a.value - lhs.value)
                    .abs()
                    .total_cmp(&(b.value - lhs.value).abs())
            })
            .expect("at least two routes");
        CheckRecord {
            identity: identity.to_string(),
            params,
            case,
            lhs_value: lhs.value,
            rhs_value: rhs.value,
            abs_diff,
            rel_diff,
            pass: abs_diff <= tol_abs || rel_diff <= tol_rel,
            lhs_err: lhs.abs_err,
            rhs_err: rhs.abs_err,
            tol_rel,
            tol_abs,
            wall_time: 0.0,
            routes: routes.clone(),
            reason: None,
        }
    }

    /// A check that could not be completed.
    pub fn failed(
        identity: &str,
        params: Vec<Param>,
        case: Option<String>,
        reason: String,
        tol_rel: f64,
        tol_abs: f64,
    ) -> Self {
        CheckRecord {
            identity: identity.to_string(),
            params,
            case,
            lhs_value: 0.0,
            rhs_value: 0.0,
            abs_diff: 0.0,
            rel_diff: 0.0,
            pass: false,
            lhs_err: 0.0,
            rhs_err: 0.0,
            tol_rel,
            tol_abs,
            wall_time: 0.0,
            routes: Vec::new(),
            reason: Some(reason),
        }
    }

    pub fn with_wall_time(mut self, seconds: f64) -> Self {
        self.wall_time = seconds;
        self
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|p| p.name == name).map(|p| p.value)
    }

    pub fn route(&self, name: &str) -> Option<&RouteValue> {
        self.routes.iter().find(|r| r.route == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(v: f64) -> RouteValue {
        RouteValue {
            route: format!("r{v}"),
            value: v,
            abs_err: 0.0,
        }
    }

    #[test]
    fn pass_rule() {
        let b = 1.0 + 1e-9;
        let r = CheckRecord::compare("X", vec![], None, vec![rv(1.0), rv(b)], 1e-8, 0.0);
        assert!(r.pass);
        assert_eq!(r.rel_diff, (b - 1.0) / b);
        let r = CheckRecord::compare("X", vec![], None, vec![rv(1.0), rv(1.1)], 1e-8, 0.0);
        assert!(!r.pass);
        // absolute tolerance rescues near-zero comparisons
        let r = CheckRecord::compare("X", vec![], None, vec![rv(0.0), rv(1e-16)], 1e-8, 1e-12);
        assert!(r.pass);
        assert_eq!(r.rel_diff, 1.0);
    }

    #[test]
    fn difference_overflow_stays_finite() {
        let r = CheckRecord::compare("X", vec![], None, vec![rv(f64::MAX), rv(-f64::MAX)], 1e-8, 0.0);
        assert_eq!(r.abs_diff, f64::MAX);
        assert!(r.rel_diff.is_finite() && !r.pass);
    }

    #[test]
    fn pairwise_over_many_routes() {
        let r = CheckRecord::compare("X", vec![], None, vec![rv(2.0), rv(1.0), rv(3.0)], 0.1, 0.0);
        assert_eq!(r.abs_diff, 2.0);
        assert_eq!(r.rel_diff, 2.0 / 3.0);
        assert_eq!(r.lhs_value, 2.0);
        assert!(r.rhs_value == 1.0 || r.rhs_value == 3.0);
    }

    #[test]
    fn zero_against_zero() {
        let r = CheckRecord::compare("X", vec![], None, vec![rv(0.0), rv(0.0)], 1e-8, 0.0);
        assert!(r.pass);
        assert_eq!(r.rel_diff, 0.0);
    }
}
