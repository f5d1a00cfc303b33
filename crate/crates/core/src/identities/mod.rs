//! Identity verification: every identity is a set of independent evaluation
//! routes for the same quantity, a parameter domain, and tolerances.
//!
//! A point is checked by evaluating every route that applies there and
//! comparing all of them pairwise (see [`CheckRecord::compare`]). Grid runs
//! evaluate points in parallel but always return records in grid order, and
//! never stop at the first failure.

use std::collections::BTreeMap;
use std::ops::Index;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::EvalResult;
use crate::laplace::{parse_pair, registry, TransformPair};
use crate::quad::QuadConfig;
use crate::record::{CheckRecord, Param, RouteValue};

mod catalog;

pub use catalog::catalog;

/// What a route produced at one point.
#[derive(Debug, Clone, PartialEq)]
pub enum RouteOutcome {
    Value(EvalResult),
    /// The route's integral or formula does not exist here; the text says why.
    NotApplicable(String),
}

pub type RouteFn = fn(&Point, &QuadConfig) -> Result<RouteOutcome>;

/// Domain check; the error names the violated constraint.
pub type DomainFn = fn(&Point) -> std::result::Result<(), String>;

#[derive(Clone, Copy)]
pub struct Route {
    pub name: &'static str,
    pub eval: RouteFn,
}

#[derive(Debug, Clone)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: Vec<f64>,
}

pub struct IdentitySpec {
    pub id: &'static str,
    pub description: &'static str,
    pub params: Vec<ParamSpec>,
    /// The point also carries a transform pair.
    pub uses_pair: bool,
    /// Human-readable form of the domain.
    pub constraint: &'static str,
    pub domain: DomainFn,
    pub routes: Vec<Route>,
    pub tol_rel: f64,
    pub tol_abs: f64,
    pub quad: QuadConfig,
    pub note: Option<&'static str>,
}

impl IdentitySpec {
    pub fn param_names(&self) -> Vec<&'static str> {
        self.params.iter().map(|p| p.name).collect()
    }

    pub fn route_names(&self) -> Vec<&'static str> {
        self.routes.iter().map(|r| r.name).collect()
    }
}

impl std::fmt::Debug for IdentitySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentitySpec")
            .field("id", &self.id)
            .field("params", &self.param_names())
            .field("routes", &self.route_names())
            .field("tol_rel", &self.tol_rel)
            .finish()
    }
}

/// One parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    names: Vec<&'static str>,
    values: Vec<f64>,
    pair: Option<TransformPair>,
}

impl Point {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.names.iter().position(|n| *n == name).map(|i| self.values[i])
    }

    /// The transform pair; only valid for identities that use one.
    pub fn pair(&self) -> &TransformPair {
        self.pair.as_ref().expect("identity uses a transform pair")
    }

    pub fn params(&self) -> Vec<Param> {
        self.names
            .iter()
            .zip(&self.values)
            .map(|(n, v)| Param::new(*n, *v))
            .collect()
    }

    fn case(&self) -> Option<String> {
        self.pair.as_ref().map(|p| p.to_string())
    }
}

impl Index<&str> for Point {
    type Output = f64;

    fn index(&self, name: &str) -> &f64 {
        let i = self
            .names
            .iter()
            .position(|n| *n == name)
            .unwrap_or_else(|| panic!("no parameter {name}"));
        &self.values[i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub tol_rel: f64,
    pub tol_abs: f64,
}

/// A grid point left out of a run, and why.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Skipped {
    pub identity: String,
    pub params: Vec<Param>,
    pub case: Option<String>,
    pub reason: String,
}

/// The records of one identity over one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridRun {
    pub identity: String,
    pub records: Vec<CheckRecord>,
    pub skipped: Vec<Skipped>,
    pub note: Option<String>,
}

impl GridRun {
    pub fn passed(&self) -> usize {
        self.records.iter().filter(|r| r.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.records.len() - self.passed()
    }
}

pub fn find(id: &str) -> Result<&'static IdentitySpec> {
    catalog()
        .iter()
        .find(|s| s.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::Parse(format!("unknown identity {id:?} (I1..I{})", catalog().len())))
}

enum Outcome {
    Checked(CheckRecord),
    Skipped(String),
}

fn evaluate(spec: &IdentitySpec, point: &Point, tol: Tolerances) -> Outcome {
    let start = Instant::now();
    let params = point.params();
    let mut routes = Vec::new();
    let mut inapplicable = Vec::new();
    for route in &spec.routes {
        match (route.eval)(point, &spec.quad) {
            Ok(RouteOutcome::Value(v)) => routes.push(RouteValue::new(route.name, v)),
            Ok(RouteOutcome::NotApplicable(why)) => inapplicable.push(format!("{}: {why}", route.name)),
            Err(e) => {
                let mut rec = CheckRecord::failed(
                    spec.id,
                    params,
                    point.case(),
                    format!("route {}: {e}", route.name),
                    tol.tol_rel,
                    tol.tol_abs,
                );
                rec.routes = routes;
                return Outcome::Checked(rec.with_wall_time(start.elapsed().as_secs_f64()));
            }
        }
    }
    if routes.len() < 2 {
        return Outcome::Skipped(format!(
            "fewer than two routes apply ({})",
            inapplicable.join("; ")
        ));
    }
    let rec = CheckRecord::compare(spec.id, params, point.case(), routes, tol.tol_rel, tol.tol_abs);
    Outcome::Checked(rec.with_wall_time(start.elapsed().as_secs_f64()))
}

/// Checks one identity at one point.
///
/// Every parameter of the identity must be given; identities over transform
/// pairs also need `pair`. Route failures come back as a failed record, not
/// as an error.
pub fn run_identity(
    id: &str,
    params: &[(&str, f64)],
    pair: Option<TransformPair>,
    overrides: Option<Tolerances>,
) -> Result<CheckRecord> {
    let spec = find(id)?;
    let mut values = Vec::with_capacity(spec.params.len());
    for p in &spec.params {
        let v = params
            .iter()
            .find(|(n, _)| *n == p.name)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::Parse(format!("{}: missing parameter {}", spec.id, p.name)))?;
        values.push(v);
    }
    if let Some((n, _)) = params.iter().find(|(n, _)| !spec.params.iter().any(|p| p.name == *n)) {
        return Err(Error::Parse(format!("{}: unknown parameter {n}", spec.id)));
    }
    if spec.uses_pair != pair.is_some() {
        return Err(Error::Parse(format!(
            "{}: a transform pair is {}",
            spec.id,
            if spec.uses_pair { "required" } else { "not accepted" }
        )));
    }
    let point = Point {
        names: spec.param_names(),
        values,
        pair,
    };
    (spec.domain)(&point).map_err(|why| Error::Domain(format!("{}: {why}", spec.id)))?;
    let tol = overrides.unwrap_or(Tolerances {
        tol_rel: spec.tol_rel,
        tol_abs: spec.tol_abs,
    });
    match evaluate(spec, &point, tol) {
        Outcome::Checked(rec) => Ok(rec),
        Outcome::Skipped(why) => Err(Error::Domain(format!("{}: {why}", spec.id))),
    }
}

/// Per-parameter value lists overriding the defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Grid {
    values: BTreeMap<String, Vec<f64>>,
    pairs: Option<Vec<TransformPair>>,
}

impl Grid {
    pub fn set(&mut self, name: &str, values: Vec<f64>) -> &mut Self {
        self.values.insert(name.to_string(), values);
        self
    }

    pub fn set_pairs(&mut self, pairs: Vec<TransformPair>) -> &mut Self {
        self.pairs = Some(pairs);
        self
    }

    /// Parameter names given explicitly (`pair` included when set).
    pub fn names(&self) -> Vec<String> {
        let mut v: Vec<String> = self.values.keys().cloned().collect();
        if self.pairs.is_some() {
            v.push("pair".into());
        }
        v
    }

    /// Applies `name=v1,v2,...`; for `pair` the values are pair specs such
    /// as `pair=power(r=0),dirac(b=1)`.
    pub fn parse_assignment(&mut self, text: &str) -> Result<()> {
        let (name, list) = text
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("grid entry {text:?} is not name=v1,v2,...")))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::Parse(format!("grid entry {text:?} has no name")));
        }
        if name == "pair" {
            let pairs = split_top_level(list)
                .into_iter()
                .map(parse_pair)
                .collect::<Result<Vec<_>>>()?;
            if pairs.is_empty() {
                return Err(Error::Parse("pair grid is empty".into()));
            }
            self.set_pairs(pairs);
            return Ok(());
        }
        let values = list
            .split(',')
            .map(|v| {
                let v = v.trim();
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::Parse(format!("grid value {v:?} for {name} is not a finite number")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.set(name, values);
        Ok(())
    }

    pub fn parse(entries: &[String]) -> Result<Grid> {
        let mut g = Grid::default();
        for e in entries {
            g.parse_assignment(e)?;
        }
        Ok(g)
    }

    fn points(&self, spec: &IdentitySpec) -> Vec<Point> {
        let lists: Vec<&[f64]> = spec
            .params
            .iter()
            .map(|p| self.values.get(p.name).map(Vec::as_slice).unwrap_or(&p.default))
            .collect();
        let pairs: Vec<Option<TransformPair>> = if spec.uses_pair {
            self.pairs
                .clone()
                .unwrap_or_else(|| registry().to_vec())
                .into_iter()
                .map(Some)
                .collect()
        } else {
            vec![None]
        };
        let names = spec.param_names();
        let mut out = Vec::new();
        for pair in pairs {
            for values in cartesian(&lists) {
                out.push(Point {
                    names: names.clone(),
                    values,
                    pair: pair.clone(),
                });
            }
        }
        out
    }
}

// Splits on commas that are not inside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts.retain(|p| !p.is_empty());
    parts
}

// Row-major product, first list outermost.
fn cartesian(lists: &[&[f64]]) -> Vec<Vec<f64>> {
    lists.iter().fold(vec![Vec::new()], |acc, list| {
        acc.into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect()
    })
}

/// Runs an identity over a grid. Out-of-domain points are skipped with the
/// reason; a grid with no admissible point at all is an error.
pub fn run_grid(id: &str, grid: &Grid) -> Result<GridRun> {
    let spec = find(id)?;
    let tol = Tolerances {
        tol_rel: spec.tol_rel,
        tol_abs: spec.tol_abs,
    };
    let mut skipped = Vec::new();
    let mut admissible = Vec::new();
    for point in grid.points(spec) {
        match (spec.domain)(&point) {
            Ok(()) => admissible.push(point),
            Err(reason) => skipped.push(Skipped {
                identity: spec.id.into(),
                params: point.params(),
                case: point.case(),
                reason,
            }),
        }
    }
    if admissible.is_empty() {
        return Err(Error::Domain(format!(
            "{}: no admissible grid points (domain: {})",
            spec.id, spec.constraint
        )));
    }
    let outcomes: Vec<(Point, Outcome)> = admissible
        .into_par_iter()
        .map(|p| {
            let o = evaluate(spec, &p, tol);
            (p, o)
        })
        .collect();
    let mut records = Vec::new();
    for (point, outcome) in outcomes {
        match outcome {
            Outcome::Checked(r) => records.push(r),
            Outcome::Skipped(reason) => skipped.push(Skipped {
                identity: spec.id.into(),
                params: point.params(),
                case: point.case(),
                reason,
            }),
        }
    }
    Ok(GridRun {
        identity: spec.id.into(),
        records,
        skipped,
        note: spec.note.map(String::from),
    })
}

/// Parameter names used anywhere in the catalog, plus `pair`.
pub fn known_param_names() -> Vec<&'static str> {
    let mut v: Vec<&'static str> = catalog().iter().flat_map(|s| s.param_names()).collect();
    v.push("pair");
    v.sort_unstable();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_respects_parentheses() {
        assert_eq!(
            split_top_level("power(r=0), dirac(b=1),exp(c=-1)"),
            vec!["power(r=0)", "dirac(b=1)", "exp(c=-1)"]
        );
    }

    #[test]
    fn cartesian_order() {
        let a = [1.0, 2.0];
        let b = [10.0, 20.0, 30.0];
        let p = cartesian(&[&a, &b]);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![1.0, 10.0]);
        assert_eq!(p[1], vec![1.0, 20.0]);
        assert_eq!(p[5], vec![2.0, 30.0]);
    }

    #[test]
    fn grid_parsing() {
        let g = Grid::parse(&["a=0.5, 1".into(), "pair=power(r=0),dirac(b=1)".into()]).unwrap();
        assert_eq!(g.values["a"], vec![0.5, 1.0]);
        assert_eq!(g.pairs.as_ref().unwrap().len(), 2);
        for bad in ["a", "=1", "a=x", "a=1,,2", "a=inf", "pair=gauss(a=1)"] {
            assert!(Grid::parse(&[bad.into()]).is_err(), "{bad}");
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(find("i7").unwrap().id, "I7");
        assert!(matches!(find("I20"), Err(Error::Parse(_))));
    }
}
