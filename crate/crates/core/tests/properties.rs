//! Property tests for the kernel, the quadrature engine, the transforms and
//! the report format.

use proptest::prelude::*;

use incgamma::identities::run_identity;
use incgamma::kernel::{erf, erfc, erfcx, lower_gamma, lower_gamma_branch, regularized_p, Branch};
use incgamma::laplace::{make_exponential, make_power, registry, TimeKind};
use incgamma::quad::{integrate, IntervalSpec, QuadConfig};
use incgamma::record::{CheckRecord, Param, RouteValue};
use incgamma::report::{Note, Report};
use incgamma::transform::{erfc_linear_moment, erfc_moment, erfc_weighted_integral, ReductionForm};
use incgamma::kernel::EvalResult;
use incgamma::Error;

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lower_gamma_recurrence(s in 0.1f64..50.0, x in log_uniform(0.01, 100.0)) {
        let up = lower_gamma(s + 1.0, x).unwrap().value;
        let down = lower_gamma(s, x).unwrap().value;
        let rhs = s * down - (s * x.ln() - x).exp();
        prop_assert!((up - rhs).abs() <= 1e-11 * up.abs().max(1.0), "{up} vs {rhs}");
    }

    #[test]
    fn branches_agree_at_switchover(s in 0.1f64..50.0) {
        let x = s + 1.0;
        let a = lower_gamma_branch(s, x, Branch::Series).unwrap().value;
        let b = lower_gamma_branch(s, x, Branch::ContinuedFraction).unwrap().value;
        prop_assert!(rel(a, b) <= 1e-11, "{a} vs {b}");
    }

    #[test]
    fn regularized_p_is_monotone(s in 0.1f64..50.0, x in log_uniform(0.01, 100.0), k in 1.0f64..3.0) {
        let p1 = regularized_p(s, x).unwrap().value;
        let p2 = regularized_p(s, x * k).unwrap().value;
        prop_assert!((0.0..=1.0).contains(&p1));
        prop_assert!(p1 <= p2, "P({s},{x}) = {p1} > P({s},{}) = {p2}", x * k);
    }

    #[test]
    fn regularized_p_reaches_one(s in 0.1f64..50.0) {
        let x = s + 40.0 * s.sqrt() + 40.0;
        let p = regularized_p(s, x).unwrap().value;
        prop_assert!(p > 1.0 - 1e-12 && p <= 1.0, "{p}");
    }

    #[test]
    fn erf_is_odd(x in -30.0f64..30.0) {
        prop_assert_eq!(erf(-x).unwrap().value, -erf(x).unwrap().value);
    }

    #[test]
    fn erf_plus_erfc(x in -1.0f64..1.0) {
        let sum = erf(x).unwrap().value + erfc(x).unwrap().value;
        prop_assert!((sum - 1.0).abs() <= 1e-14, "{sum}");
    }

    #[test]
    fn erfcx_matches_erfc(x in 0.0f64..5.0) {
        let scaled = erfcx(x).unwrap().value * (-x * x).exp();
        prop_assert!(rel(scaled, erfc(x).unwrap().value) <= 1e-11);
    }

    #[test]
    fn moment_scaling(r in -0.99f64..4.0, a in log_uniform(0.05, 20.0)) {
        let base = erfc_moment(r, 1.0).unwrap();
        let scaled = erfc_moment(r, a).unwrap() * a.powf(2.0 * r + 2.0);
        prop_assert!(rel(scaled, base) <= 8.0 * f64::EPSILON, "{scaled} vs {base}");
    }

    #[test]
    fn linear_moment_scaling(mu in -0.99f64..4.0, a in log_uniform(0.05, 20.0)) {
        let base = erfc_linear_moment(mu, 1.0).unwrap();
        let scaled = erfc_linear_moment(mu, a).unwrap() * a.powf(mu + 1.0);
        prop_assert!(rel(scaled, base) <= 8.0 * f64::EPSILON, "{scaled} vs {base}");
    }
}

// Quadrature runs are slower; fewer cases.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quadrature_error_is_honest(
        p in prop::sample::select(vec![-0.5, 0.0, 0.5, 2.0]),
        rel_tol in log_uniform(1e-13, 1e-5),
    ) {
        let cfg = QuadConfig::new(rel_tol, 1e-300, QuadConfig::MAX_LEVEL, 200_000).unwrap();
        let dom = IntervalSpec::finite(0.0, 10.0).singular_lower(p < 0.0);
        if let Ok(r) = integrate(|t| t.powf(p) * (-t).exp(), &dom, &cfg) {
            let exact = lower_gamma(p + 1.0, 10.0).unwrap().value;
            let actual = (r.value - exact).abs();
            prop_assert!(actual <= 10.0 * r.abs_err, "p={p}: error {actual:e}, estimate {:e}", r.abs_err);
        }
    }

    #[test]
    fn quadrature_is_linear(alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
        let cfg = QuadConfig::default();
        let dom = IntervalSpec::finite(0.0, 2.0).singular_lower(true);
        let f = |t: f64| (-t).exp() * (3.0 * t).cos();
        let g = |t: f64| t.sqrt();
        let rf = integrate(f, &dom, &cfg).unwrap();
        let rg = integrate(g, &dom, &cfg).unwrap();
        let rc = integrate(|t| alpha * f(t) + beta * g(t), &dom, &cfg).unwrap();
        let combined = alpha * rf.value + beta * rg.value;
        let budget = rc.abs_err + alpha.abs() * rf.abs_err + beta.abs() * rg.abs_err
            + 4.0 * f64::EPSILON * (rc.value.abs() + (alpha * rf.value).abs() + (beta * rg.value).abs());
        prop_assert!((rc.value - combined).abs() <= budget, "{} vs {combined}", rc.value);
    }

    #[test]
    fn quadrature_is_additive(c in 0.1f64..1.9, k in 0.5f64..5.0) {
        let cfg = QuadConfig::default();
        let f = |t: f64| (-t).exp() * (k * t).sin() + 1.0 / (1.0 + t * t);
        let left = integrate(f, &IntervalSpec::finite(0.0, c), &cfg).unwrap();
        let right = integrate(f, &IntervalSpec::finite(c, 2.0), &cfg).unwrap();
        let whole = integrate(f, &IntervalSpec::finite(0.0, 2.0), &cfg).unwrap();
        let budget = left.abs_err + right.abs_err + whole.abs_err + 4.0 * f64::EPSILON * whole.value.abs();
        prop_assert!((left.value + right.value - whole.value).abs() <= budget);
    }

    #[test]
    fn endpoint_power_law(q in -0.9f64..-0.1) {
        let cfg = QuadConfig::default();
        let dom = IntervalSpec::finite(0.0, 1.0).singular_lower(true);
        let r = integrate(|t| t.powf(q), &dom, &cfg).unwrap();
        prop_assert!(rel(r.value, 1.0 / (q + 1.0)) <= cfg.rel_tol, "q={q}: {}", r.value);
    }

    #[test]
    fn cosh_substitution_matches_theta_form(
        r in prop::sample::select(vec![-0.5, 0.0, 0.5, 1.0, 2.0]),
        a in 0.3f64..3.0,
    ) {
        let cfg = QuadConfig::default();
        let p = make_power(r).unwrap();
        let th = erfc_weighted_integral(&p, a, ReductionForm::Theta, &cfg).unwrap();
        let s = erfc_weighted_integral(&p, a, ReductionForm::S, &cfg).unwrap();
        let budget = th.abs_err + s.abs_err + 4.0 * f64::EPSILON * th.value.abs();
        prop_assert!((th.value - s.value).abs() <= budget, "{} vs {}", th.value, s.value);
    }

    #[test]
    fn transform_below_abscissa_is_an_error(c in -3.0f64..3.0, ds in 0.0f64..5.0) {
        let p = make_exponential(c).unwrap();
        prop_assert!(matches!(p.transform(c - ds), Err(Error::Domain(_))));
    }

    #[test]
    fn identity_checks_are_deterministic(s in 0.1f64..20.0, x in log_uniform(0.01, 50.0)) {
        let strip = |mut r: CheckRecord| { r.wall_time = 0.0; r };
        let a = strip(run_identity("I1", &[("s", s), ("x", x)], None, None).unwrap());
        let b = strip(run_identity("I1", &[("s", s), ("x", x)], None, None).unwrap());
        prop_assert_eq!(a, b);
    }
}

fn arb_record() -> impl Strategy<Value = CheckRecord> {
    let finite = prop::num::f64::NORMAL | prop::num::f64::ZERO | prop::num::f64::SUBNORMAL;
    (
        prop::collection::vec(("[a-z]{1,4}", finite), 0..4),
        proptest::option::of("[a-z()=.0-9-]{1,12}"),
        prop::collection::vec(finite, 2..4),
        0.0f64..1e-3,
    )
        .prop_map(|(params, case, values, tol)| {
            let params = params.into_iter().map(|(n, v)| Param::new(n, v)).collect();
            let routes = values
                .iter()
                .enumerate()
                .map(|(i, v)| RouteValue::new(format!("r{i}"), EvalResult::closed(*v)))
                .collect();
            CheckRecord::compare("I0", params, case, routes, tol, 0.0)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn report_json_round_trips(records in prop::collection::vec(arb_record(), 0..6), note in ".{0,20}") {
        let report = Report::new(records, vec![], vec![Note { identity: "I1".into(), text: note }]);
        prop_assert_eq!(report.summary, report.tally());
        let back = Report::from_json(&report.to_json().unwrap()).unwrap();
        prop_assert_eq!(back, report);
    }
}

#[test]
fn quadrature_error_is_honest_at_default_tolerance() {
    let cfg = QuadConfig::default();
    for p in [-0.5, 0.0, 0.5, 2.0] {
        let dom = IntervalSpec::finite(0.0, 10.0).singular_lower(p < 0.0);
        let r = integrate(|t: f64| t.powf(p) * (-t).exp(), &dom, &cfg).unwrap();
        let exact = lower_gamma(p + 1.0, 10.0).unwrap().value;
        assert!((r.value - exact).abs() <= 10.0 * r.abs_err, "p={p}");
    }
}

#[test]
fn moments_match_theta_form() {
    let cfg = QuadConfig::default();
    for r in [-0.5, 0.0, 0.5, 1.0, 2.0] {
        let p = make_power(r).unwrap();
        for a in [0.5, 1.0, 3.0] {
            let closed = erfc_moment(r, a).unwrap();
            let th = erfc_weighted_integral(&p, a, ReductionForm::Theta, &cfg).unwrap().value;
            assert!(rel(th, closed) <= 1e-8, "r={r} a={a}: {th} vs {closed}");
        }
    }
}

#[test]
fn registry_forms_agree() {
    let cfg = QuadConfig::default();
    for p in registry().iter().filter(|p| p.sigma0() < 0.0) {
        for a in [0.5, 1.0, 2.0] {
            let th = erfc_weighted_integral(p, a, ReductionForm::Theta, &cfg).unwrap().value;
            let s = erfc_weighted_integral(p, a, ReductionForm::S, &cfg).unwrap().value;
            assert!(rel(s, th) <= 1e-7, "{p} a={a}: s {s} vs theta {th}");
            if p.time_kind() == TimeKind::Ordinary {
                let t = erfc_weighted_integral(p, a, ReductionForm::TimeDomain, &cfg).unwrap().value;
                assert!(rel(t, th) <= 1e-7, "{p} a={a}: time {t} vs theta {th}");
            }
        }
    }
}
