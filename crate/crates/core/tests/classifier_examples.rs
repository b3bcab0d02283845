//! Definition and theorem checks on the two worked example curves, plus
//! the f = z positive witness on the null curve.

use std::collections::BTreeMap;

use approx::assert_relative_eq;
use eikonal_core::classify::{
    nonnull::{
        axis_reconstruct_nonnull, corollary_2_1_check, corollary_2_2_check, darboux_helix_check,
        flip_orientation, non_normed_darboux_check, ode_system_residual, sigma_invariant,
        slant_helix_check, theorem_2_1_check, theorem_2_2_check, theorem_2_3_check,
    },
    null::{
        corollary_3_1_check, null_darboux_check, null_helix_check, null_slant_check,
        theorem_3_1_check, theorem_3_2_check, theorem_3_3_det_check, theorem_3_4_check,
        theorem_3_5_check,
    },
    reconstruction_residual, Conclusion, NonNullPairings, NullPairings,
};
use eikonal_core::curve::CurveSpec;
use eikonal_core::error::Error;
use eikonal_core::field::{GradientConvention, ScalarFieldSpec};
use eikonal_core::frame::{frame_trace, FrameTrace};
use eikonal_core::numerics::constancy::TolerancePolicy;

fn spacelike_helix(a: f64, b: f64) -> CurveSpec {
    let params: BTreeMap<String, f64> =
        [("a".to_string(), a), ("b".to_string(), b)].into_iter().collect();
    CurveSpec::new(
        "a*cosh(s/sqrt(a^2 + b^2))",
        "a*sinh(s/sqrt(a^2 + b^2))",
        "b*s/sqrt(a^2 + b^2)",
        &params,
        -2.0,
        2.0,
        64,
    )
    .unwrap()
}

fn null_curve() -> CurveSpec {
    CurveSpec::new("sinh(s)", "cosh(s)", "s", &BTreeMap::new(), -2.0, 2.0, 64).unwrap()
}

fn field(src: &str) -> ScalarFieldSpec {
    ScalarFieldSpec::new(src, &BTreeMap::new(), GradientConvention::CoordinateGradient).unwrap()
}

fn nonnull_pairings(f: &ScalarFieldSpec, c: &CurveSpec) -> NonNullPairings {
    let FrameTrace::NonNull(samples) = frame_trace(c, &TolerancePolicy::default()).unwrap() else {
        panic!("expected non-null trace");
    };
    NonNullPairings::from_field_and_trace(f, c, &samples).unwrap()
}

fn null_pairings(f: &ScalarFieldSpec, c: &CurveSpec) -> NullPairings {
    let FrameTrace::Null(samples) = frame_trace(c, &TolerancePolicy::default()).unwrap() else {
        panic!("expected null trace");
    };
    NullPairings::from_field_and_trace(f, c, &samples).unwrap()
}

#[test]
fn slant_helix_on_spacelike_example() {
    let policy = TolerancePolicy::default();
    let c = spacelike_helix(1.0, 1.0);
    let p = nonnull_pairings(&field("x^2 + y^2 + z"), &c);
    let v = slant_helix_check(&p, &policy).unwrap();
    assert!(v.holds() && v.admissible);
    // paper prints -2a; the constructed V2 flips the sign, magnitude pinned
    assert_relative_eq!(v.report.center.abs(), 2.0, epsilon = 1e-9);

    // g(grad z, V2) = 0: constant but inadmissible
    let p = nonnull_pairings(&field("z"), &c);
    let v = slant_helix_check(&p, &policy).unwrap();
    assert!(v.holds() && !v.admissible && !v.report.is_nonzero);

    // a generic field is not constant
    let p = nonnull_pairings(&field("x^3"), &c);
    let v = slant_helix_check(&p, &policy).unwrap();
    assert!(!v.holds());
}

#[test]
fn darboux_checks_on_spacelike_example() {
    let policy = TolerancePolicy::default();
    let c = spacelike_helix(1.0, 1.0);
    let p = nonnull_pairings(&field("x^2 + y^2 + z"), &c);

    let normed = darboux_helix_check(&p, &policy).unwrap();
    assert!(normed.holds() && normed.admissible);
    // value: g(grad f, W)/sqrt(kappa^2 + tau^2) with both factors constant
    let raw = non_normed_darboux_check(&p, &policy).unwrap();
    assert!(raw.holds());
    assert_relative_eq!(
        normed.report.center,
        raw.report.center / 0.5f64.sqrt(),
        epsilon = 1e-9
    );

    // constant field: zero gradient, constant zero pairing, inadmissible
    let p = nonnull_pairings(&field("5"), &c);
    let raw = non_normed_darboux_check(&p, &policy).unwrap();
    assert!(raw.holds() && !raw.report.is_nonzero);
}

#[test]
fn corollary_2_1_on_spacelike_example() {
    let policy = TolerancePolicy::default();
    let p = nonnull_pairings(&field("x^2 + y^2 + z"), &spacelike_helix(1.0, 1.0));
    let report = corollary_2_1_check(&p, &policy).unwrap();
    assert!(!report.vacuous);
    let Some(Conclusion::Holds(true)) = report.conclusion("biconditional") else {
        panic!("biconditional should hold: {report:?}");
    };
}

#[test]
fn sigma_vanishes_on_helices() {
    let policy = TolerancePolicy::default();
    let p = nonnull_pairings(&field("x^2 + y^2 + z"), &spacelike_helix(1.0, 1.0));
    let sigma = sigma_invariant(&p, &policy).unwrap();
    assert!(sigma.report.is_constant);
    assert!(sigma.report.center.abs() < 1e-9);
    assert!(sigma.samples.iter().all(|x| x.abs() < 1e-8));

    let p = nonnull_pairings(&field("x + y"), &spacelike_helix(2.0, 0.5));
    let sigma = sigma_invariant(&p, &policy).unwrap();
    assert!(sigma.report.is_constant && sigma.report.center.abs() < 1e-8);
}

#[test]
fn axis_reconstruction_on_spacelike_example() {
    let policy = TolerancePolicy::default();
    let p = nonnull_pairings(&field("x^2 + y^2 + z"), &spacelike_helix(1.0, 1.0));
    let (axis, residual) = axis_reconstruct_nonnull(&p, &policy).unwrap();
    assert!(residual < 1e-6, "axis residual {residual}");
    assert_relative_eq!(axis.c.abs(), 2.0, epsilon = 1e-9);
    // Thm 2.2 conclusion: g(grad f, W0) constant
    let darboux = darboux_helix_check(&p, &policy).unwrap();
    assert!(darboux.holds());
    // hypotheses fail for this field (it is a helix, H^f != 0): the 2.1/2.2
    // reports are vacuous while their conclusions still hold
    let t21 = theorem_2_1_check(&p, &policy).unwrap();
    assert!(t21.vacuous);
    assert_eq!(t21.hypothesis_value("not a helix"), Some(false));
    assert_eq!(t21.hypothesis_value("Hessian H^f = 0"), Some(false));
    let t22 = theorem_2_2_check(&p, &policy).unwrap();
    assert!(t22.vacuous);
    let Some(Conclusion::Residual(r)) = t22.conclusion("plane decomposition residual") else {
        panic!("missing residual");
    };
    assert!(*r < 1e-6);

    // slant verdict is a precondition
    let p = nonnull_pairings(&field("x^3"), &spacelike_helix(1.0, 1.0));
    assert!(matches!(
        axis_reconstruct_nonnull(&p, &policy),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn ode_system_residual_demonstrates_gate() {
    let policy = TolerancePolicy::default();
    let p = nonnull_pairings(&field("x^2 + y^2 + z"), &spacelike_helix(1.0, 1.0));
    // all quantities constant: the derivative terms vanish and the
    // equations reduce to eps1 kappa c = 0, eps3 tau c = 0, which fail
    let (r1, r2) = ode_system_residual(&p, &policy).unwrap();
    assert_relative_eq!(r1, 1.0, epsilon = 1e-8);
    assert_relative_eq!(r2, 1.0, epsilon = 1e-8);
    let report = corollary_2_2_check(&p, &policy).unwrap();
    assert!(report.vacuous, "the helix hypothesis must gate the assertion");
}

#[test]
fn theorem_2_3_sides_on_spacelike_example() {
    let policy = TolerancePolicy::default();
    let p = nonnull_pairings(&field("x^2 + y^2 + z"), &spacelike_helix(1.0, 1.0));
    let report = theorem_2_3_check(&p, &policy).unwrap();
    // both sides true, biconditional respected, but vacuous (it is a helix)
    assert!(report.vacuous);
    let Some(Conclusion::Holds(true)) = report.conclusion("biconditional") else {
        panic!("biconditional entry missing: {report:?}");
    };
}

#[test]
fn orientation_flip_preserves_verdicts() {
    let policy = TolerancePolicy::default();
    for f_src in ["x^2 + y^2 + z", "x^3", "z"] {
        let p = nonnull_pairings(&field(f_src), &spacelike_helix(1.0, 1.0));
        let q = flip_orientation(&p);
        let (a, b) = (
            slant_helix_check(&p, &policy).unwrap(),
            slant_helix_check(&q, &policy).unwrap(),
        );
        assert_eq!(a.holds(), b.holds());
        assert_relative_eq!(a.report.center.abs(), b.report.center.abs(), epsilon = 1e-12);
        let (a, b) = (
            non_normed_darboux_check(&p, &policy).unwrap(),
            non_normed_darboux_check(&q, &policy).unwrap(),
        );
        assert_eq!(a.holds(), b.holds());
        assert_relative_eq!(a.report.center.abs(), b.report.center.abs(), epsilon = 1e-12);
        let (a, b) = (
            corollary_2_1_check(&p, &policy).unwrap(),
            corollary_2_1_check(&q, &policy).unwrap(),
        );
        let (Some(Conclusion::Holds(ba)), Some(Conclusion::Holds(bb))) =
            (a.conclusion("biconditional"), b.conclusion("biconditional"))
        else {
            panic!("missing biconditionals");
        };
        assert_eq!(ba, bb);
    }
}

#[test]
fn frame_dual_reconstruction_on_both_examples() {
    let policy = TolerancePolicy::default();
    let f = field("x^2 + y^2 + z");
    let c = spacelike_helix(1.0, 1.0);
    let trace = frame_trace(&c, &policy).unwrap();
    assert!(reconstruction_residual(&f, &c, &trace).unwrap() < 1e-8);

    let c = null_curve();
    let trace = frame_trace(&c, &policy).unwrap();
    assert!(reconstruction_residual(&f, &c, &trace).unwrap() < 1e-8);
}

#[test]
fn null_definitions_on_example() {
    let policy = TolerancePolicy::default();
    let c = null_curve();
    let p = null_pairings(&field("x^2 + y^2 + z"), &c);

    let helix = null_helix_check(&p, &policy).unwrap();
    assert!(helix.holds() && helix.admissible);
    assert_relative_eq!(helix.report.center, 1.0, epsilon = 1e-10);

    let v2 = null_slant_check(&p, 2, &policy).unwrap();
    assert!(v2.holds() && v2.admissible);
    assert_relative_eq!(v2.report.center, 0.5, epsilon = 1e-10);

    let v3 = null_slant_check(&p, 3, &policy).unwrap();
    assert!(v3.holds() && v3.admissible);
    assert_relative_eq!(v3.report.center, 2.0, epsilon = 1e-10);

    let w = null_darboux_check(&p, &policy).unwrap();
    assert!(w.holds() && w.admissible);
    assert_relative_eq!(w.report.center, -1.0, epsilon = 1e-10);

    // f = z pairs to -1 with W = (0, 0, -1)
    let p = null_pairings(&field("z"), &c);
    let w = null_darboux_check(&p, &policy).unwrap();
    assert!(w.holds());
    assert_relative_eq!(w.report.center, -1.0, epsilon = 1e-10);

    // non-constant cases
    let p = null_pairings(&field("x^2 - y^2"), &c);
    assert!(!null_helix_check(&p, &policy).unwrap().holds());
    let p = null_pairings(&field("x*z"), &c);
    assert!(!null_darboux_check(&p, &policy).unwrap().holds());
}

#[test]
fn theorem_3_1_on_example_field_is_vacuous_with_large_residual() {
    let policy = TolerancePolicy::default();
    let p = null_pairings(&field("x^2 + y^2 + z"), &null_curve());
    let report = theorem_3_1_check(&p, &policy).unwrap();
    // H^f != 0: vacuous, and indeed the axis form fails for this field
    assert!(report.vacuous);
    assert_eq!(report.hypothesis_value("Hessian H^f = 0"), Some(false));
    let Some(Conclusion::Report(ratio)) = report.conclusion("kappa/tau constant") else {
        panic!("missing ratio report");
    };
    assert!(ratio.is_constant);
    assert_relative_eq!(ratio.center, -2.0, epsilon = 1e-9);
    let Some(Conclusion::Residual(r)) = report.conclusion("axis residual") else {
        panic!("missing axis residual");
    };
    assert!(*r > 0.5, "axis residual should be large, got {r}");
}

#[test]
fn theorem_3_1_positive_witness_with_linear_field() {
    let policy = TolerancePolicy::default();
    let p = null_pairings(&field("z"), &null_curve());
    let report = theorem_3_1_check(&p, &policy).unwrap();
    assert!(!report.vacuous, "{report:?}");
    let Some(Conclusion::Report(ratio)) = report.conclusion("kappa/tau constant") else {
        panic!("missing ratio report");
    };
    assert!(ratio.is_constant);
    assert_relative_eq!(ratio.center, -2.0, epsilon = 1e-9);
    let Some(Conclusion::Residual(r)) = report.conclusion("axis residual") else {
        panic!("missing axis residual");
    };
    assert!(*r < 1e-10, "axis residual {r}");
}

#[test]
fn theorem_3_2_on_linear_field() {
    let policy = TolerancePolicy::default();
    let p = null_pairings(&field("z"), &null_curve());
    let report = theorem_3_2_check(&p, &policy).unwrap();
    assert!(!report.vacuous);
    let Some(Conclusion::Holds(true)) = report.conclusion("is null f-eikonal helix") else {
        panic!("conclusion missing: {report:?}");
    };
    let Some(Conclusion::Residual(r)) = report.conclusion("axis residual") else {
        panic!("missing residual");
    };
    assert!(*r < 1e-10);

    // paper field: pairings constant but H^f != 0 keeps it vacuous
    let p = null_pairings(&field("x^2 + y^2 + z"), &null_curve());
    let report = theorem_3_2_check(&p, &policy).unwrap();
    assert!(report.vacuous);
    let Some(Conclusion::Holds(true)) = report.conclusion("is null f-eikonal helix") else {
        panic!("pairing data still satisfies the conclusion: {report:?}");
    };

    // V2-slant hypothesis fails
    let p = null_pairings(&field("x^2 - y^2"), &null_curve());
    let report = theorem_3_2_check(&p, &policy).unwrap();
    assert!(report.vacuous);
}

#[test]
fn theorem_3_3_on_example() {
    let policy = TolerancePolicy::default();
    let FrameTrace::Null(samples) = frame_trace(&null_curve(), &policy).unwrap() else {
        panic!("expected null trace");
    };
    let report = theorem_3_3_det_check(&samples, &policy).unwrap();
    assert!(!report.vacuous);
    let Some(Conclusion::Residual(det_max)) = report.conclusion("max determinant") else {
        panic!("missing determinant");
    };
    let Some(Conclusion::Residual(closed_max)) = report.conclusion("max closed form") else {
        panic!("missing closed form");
    };
    assert!(*det_max < 1e-8, "determinant {det_max}");
    assert!(*closed_max < 1e-8, "closed form {closed_max}");
    let Some(Conclusion::Holds(true)) = report.conclusion("determinant vanishes for constant kappa/tau")
    else {
        panic!("vanishing conclusion missing: {report:?}");
    };
}

#[test]
fn theorem_3_4_gate_demonstration() {
    let policy = TolerancePolicy::default();
    let p = null_pairings(&field("x^2 + y^2 + z"), &null_curve());
    let report = theorem_3_4_check(&p, &policy).unwrap();
    // g(grad f, V3) = 2 is a valid V3-slant pairing, but H^f != 0
    assert!(report.vacuous);
    assert_eq!(report.hypothesis_value("Hessian H^f = 0"), Some(false));
    let Some(Conclusion::Residual(identity)) = report.conclusion("integral identity residual")
    else {
        panic!("missing identity residual");
    };
    // kappa I_tau + tau I_kappa = -s up to fitted constants: large
    assert!(*identity > 0.5, "identity residual {identity}");
}

#[test]
fn theorem_3_5_on_linear_field() {
    let policy = TolerancePolicy::default();
    let p = null_pairings(&field("z"), &null_curve());
    let report = theorem_3_5_check(&p, &policy).unwrap();
    // g(grad f, W) = -1 constant nonzero; kappa tau = -1/2 constant;
    // g(grad f, V3) = 0 constant (admissibility notes the zero)
    assert!(!report.vacuous, "{report:?}");
    let Some(Conclusion::Holds(true)) = report.conclusion("biconditional") else {
        panic!("biconditional missing: {report:?}");
    };
    let Some(Conclusion::Report(v3)) = report.conclusion("V3 pairing constant") else {
        panic!("V3 pairing report missing");
    };
    assert!(v3.is_constant && !v3.is_nonzero);
}

#[test]
fn corollary_3_1_reports_unreachable_branch() {
    let policy = TolerancePolicy::default();
    let p = null_pairings(&field("x^2 + y^2 + z"), &null_curve());
    let report = corollary_3_1_check(&p, &policy).unwrap();
    let Some(Conclusion::Unreachable(_)) = report.conclusion("kappa = 0 branch") else {
        panic!("unreachable branch entry missing: {report:?}");
    };
}
