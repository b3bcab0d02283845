//! Property tests: metric and cross-product identities, jet exactness
//! against symbolic differentiation, the finite-difference oracle,
//! constancy-rule monotonicity and quadrature additivity.

use std::collections::BTreeMap;

use eikonal_core::lorentz::Vec3M;
use eikonal_core::numerics::constancy::{detect_constancy, TolerancePolicy};
use eikonal_core::numerics::expr::{eval_jet, Expression};
use eikonal_core::numerics::fd::{finite_diff_oracle, suggested_step};
use eikonal_core::numerics::jet::Jet;
use eikonal_core::numerics::quad::integrate_fn;
use proptest::prelude::*;

fn comp() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn vec3() -> impl Strategy<Value = Vec3M> {
    (comp(), comp(), comp()).prop_map(|(a, b, c)| Vec3M::new(a, b, c))
}

/// Cofactor expansion along the third row; the independent determinant
/// route for the cross-product identity.
fn det_rows(u: Vec3M, v: Vec3M, w: Vec3M) -> f64 {
    let m1 = u.c2 * v.c3 - u.c3 * v.c2;
    let m2 = u.c1 * v.c3 - u.c3 * v.c1;
    let m3 = u.c1 * v.c2 - u.c2 * v.c1;
    w.c1 * m1 - w.c2 * m2 + w.c3 * m3
}

proptest! {
    #[test]
    fn inner_product_symmetric(u in vec3(), v in vec3()) {
        prop_assert_eq!(u.minkowski_inner(v), v.minkowski_inner(u));
    }

    #[test]
    fn cross_product_determinant_identity(u in vec3(), v in vec3(), w in vec3()) {
        let lhs = u.lorentz_cross(v).minkowski_inner(w);
        prop_assert!((lhs + det_rows(u, v, w)).abs() < 1e-12);
    }

    #[test]
    fn cross_product_antisymmetric(u in vec3(), v in vec3()) {
        let sum = u.lorentz_cross(v) + v.lorentz_cross(u);
        prop_assert_eq!(sum.components(), [0.0, 0.0, 0.0]);
    }

    #[test]
    fn cross_product_orthogonal_to_factors(u in vec3(), v in vec3()) {
        let c = u.lorentz_cross(v);
        prop_assert!(c.minkowski_inner(u).abs() < 1e-12);
        prop_assert!(c.minkowski_inner(v).abs() < 1e-12);
    }
}

/// Evaluate a coefficient polynomial and its k-th derivative at a point.
fn poly_derivative(coeffs: &[f64], k: usize, x: f64) -> f64 {
    let mut c: Vec<f64> = coeffs.to_vec();
    for _ in 0..k {
        c = c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, v)| i as f64 * v)
            .collect();
        if c.is_empty() {
            return 0.0;
        }
    }
    c.iter().rev().fold(0.0, |acc, v| acc * x + v)
}

fn poly_source(coeffs: &[f64]) -> String {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| format!("({c:.17e})*s^{i}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn jets_match_symbolic_polynomial_derivatives(
        coeffs in proptest::collection::vec(-2.0..2.0f64, 1..=7),
        x in -2.0..2.0f64,
    ) {
        let e = Expression::parse(&poly_source(&coeffs), &["s"], &BTreeMap::new()).unwrap();
        let jet = eval_jet(&e, x, 6).unwrap();
        for k in 0..=6 {
            let exact = poly_derivative(&coeffs, k, x);
            let got = jet.derivative(k);
            let scale = exact.abs().max(1.0);
            prop_assert!(
                (got - exact).abs() <= 1e-12 * scale,
                "order {} at {}: jet {} vs symbolic {}", k, x, got, exact
            );
        }
    }

    #[test]
    fn finite_difference_agrees_with_jets_on_polynomials(
        coeffs in proptest::collection::vec(-1.0..1.0f64, 1..=7),
        x in -1.5..1.5f64,
    ) {
        let e = Expression::parse(&poly_source(&coeffs), &["s"], &BTreeMap::new()).unwrap();
        let jet = eval_jet(&e, x, 4).unwrap();
        for k in 1..=4usize {
            let fd = finite_diff_oracle(&e, x, k, suggested_step(k)).unwrap();
            let jv = jet.derivative(k);
            let scale = jv.abs().max(1.0);
            prop_assert!(
                (fd - jv).abs() <= 1e-6 * scale,
                "order {}: fd {} vs jet {}", k, fd, jv
            );
        }
    }

    #[test]
    fn constancy_unchanged_by_adding_median_sample(
        mut samples in proptest::collection::vec(-5.0..5.0f64, 8..40),
    ) {
        let policy = TolerancePolicy::default();
        let before = detect_constancy(&samples, &policy).unwrap();
        let mut sorted = samples.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = if sorted.len() % 2 == 1 {
            sorted[sorted.len() / 2]
        } else {
            0.5 * (sorted[sorted.len() / 2 - 1] + sorted[sorted.len() / 2])
        };
        samples.push(median);
        let after = detect_constancy(&samples, &policy).unwrap();
        if before.is_constant {
            prop_assert!(after.is_constant);
        }
    }

    #[test]
    fn quadrature_additive_over_subintervals(
        a in -2.0..0.0f64,
        b in 0.0..1.0f64,
        c in 1.0..3.0f64,
        freq in 0.5..2.0f64,
    ) {
        let tol = 1e-10;
        let f = |s: f64| Ok((freq * s).sin() + s * s);
        let whole = integrate_fn(f, a, c, tol).unwrap();
        let left = integrate_fn(f, a, b, tol).unwrap();
        let right = integrate_fn(f, b, c, tol).unwrap();
        prop_assert!((whole - left - right).abs() < 2.0 * tol);
    }
}

/// Smooth non-polynomial expressions for the oracle-agreement suite; the
/// amplitude and inner scales are kept moderate so high derivatives stay
/// O(1).
fn smooth_sources() -> Vec<String> {
    let mut out = Vec::new();
    let mut rng = eikonal_core::testkit::Rng::new(0x5eed);
    for _ in 0..100 {
        let a = rng.range(0.3, 1.0);
        let b = rng.range(0.3, 1.0);
        let c = rng.range(-1.0, 1.0);
        let pick = rng.next_u64() % 4;
        out.push(match pick {
            0 => format!("{a:.17e}*sin({b:.17e}*s + {c:.17e}) + s^2"),
            1 => format!("{a:.17e}*cosh({b:.17e}*s) + {c:.17e}*s"),
            2 => format!("exp({b:.17e}*s)*{a:.17e} + cos(s)"),
            // tanh's high derivatives grow fast; keep its frequency low
            _ => format!("{a:.17e}*tanh({:.17e}*s) + {c:.17e}*s^3", 0.3 + 0.4 * (b - 0.3)),
        });
    }
    out
}

#[test]
fn jet_vs_finite_difference_on_smooth_expressions() {
    let mut rng = eikonal_core::testkit::Rng::new(0xfeed);
    for src in smooth_sources() {
        let e = Expression::parse(&src, &["s"], &BTreeMap::new()).unwrap();
        let at = rng.range(-2.0, 2.0);
        let jet = eval_jet(&e, at, 4).unwrap();
        for k in 1..=4usize {
            let fd = finite_diff_oracle(&e, at, k, suggested_step(k)).unwrap();
            let jv = jet.derivative(k);
            let scale = jv.abs().max(1.0);
            assert!(
                (fd - jv).abs() <= 1e-6 * scale,
                "{src} at {at}, order {k}: fd {fd} vs jet {jv}"
            );
        }
    }
}

#[test]
fn jet_matches_oracle_on_scaled_cosh() {
    let e = Expression::parse("cosh(s/sqrt(2))", &["s"], &BTreeMap::new()).unwrap();
    let jet = eval_jet(&e, 0.7, 4).unwrap();
    for k in 1..=4usize {
        let fd = finite_diff_oracle(&e, 0.7, k, suggested_step(k)).unwrap();
        let scale = jet.derivative(k).abs().max(1.0);
        assert!((fd - jet.derivative(k)).abs() <= 1e-6 * scale);
    }
}

#[test]
fn coordinate_frame_cross_relations_exact() {
    let e = [Vec3M::basis(1), Vec3M::basis(2), Vec3M::basis(3)];
    let eps = [-1.0, 1.0, 1.0];
    for (i, j, k) in [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
        let got = e[i].lorentz_cross(e[j]);
        let want = e[k] * (eps[i] * eps[j]);
        assert_eq!(got.components(), want.components(), "relation {i}{j}{k}");
    }
}

/// The defining identity of the metric gradient against a jet directional
/// derivative, on randomized fields, points and directions.
#[test]
fn metric_gradient_identity_randomized() {
    use eikonal_core::field::{gradient, GradientConvention, ScalarFieldSpec};
    let mut rng = eikonal_core::testkit::Rng::new(0xabcd);
    for trial in 0..100 {
        let c1 = rng.range(-1.0, 1.0);
        let c2 = rng.range(-1.0, 1.0);
        let c3 = rng.range(-1.0, 1.0);
        let src = match trial % 4 {
            0 => format!("({c1:.17e})*x^2 + ({c2:.17e})*y*z + ({c3:.17e})*z"),
            1 => format!("sin(({c1:.17e})*x) + cosh(({c2:.17e})*y) + ({c3:.17e})*z^2"),
            2 => format!("exp(({c1:.17e})*z)*({c2:.17e}) + x*y*({c3:.17e})"),
            _ => format!("({c1:.17e})*x*y + ({c2:.17e})*y^2 + tanh(({c3:.17e})*z)"),
        };
        let f = ScalarFieldSpec::new(&src, &BTreeMap::new(), GradientConvention::MetricGradient)
            .unwrap();
        let p = Vec3M::new(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0), rng.range(-1.0, 1.0));
        let dir = Vec3M::new(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0), rng.range(-1.0, 1.0));
        let lhs = gradient(&f, p).unwrap().minkowski_inner(dir);
        let rhs = f.directional_derivative(p, dir).unwrap();
        assert!((lhs - rhs).abs() < 1e-8, "{src}: {lhs} vs {rhs}");
    }
}

/// Coordinate and metric gradients differ exactly by negating the first
/// component.
#[test]
fn gradient_conventions_differ_by_first_component() {
    use eikonal_core::field::{gradient, GradientConvention, ScalarFieldSpec};
    let src = "x^2 + sin(y) + y*z";
    let co = ScalarFieldSpec::new(src, &BTreeMap::new(), GradientConvention::CoordinateGradient)
        .unwrap();
    let me =
        ScalarFieldSpec::new(src, &BTreeMap::new(), GradientConvention::MetricGradient).unwrap();
    let p = Vec3M::new(0.3, -0.8, 1.2);
    let g_co = gradient(&co, p).unwrap();
    let g_me = gradient(&me, p).unwrap();
    assert_eq!(g_co.c1, -g_me.c1);
    assert_eq!(g_co.c2, g_me.c2);
    assert_eq!(g_co.c3, g_me.c3);
}
