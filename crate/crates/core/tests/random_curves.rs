//! Frame validity on generated curves: arc-length-reparameterized
//! spacelike/timelike curves and null lifts of polynomial planar data.

use eikonal_core::classify::{null::theorem_3_3_det_check, Conclusion};
use eikonal_core::curve::Curve;
use eikonal_core::frame::{
    darboux_rotation_residual, frame_ode_residual, frame_trace, FrameTrace,
};
use eikonal_core::numerics::constancy::{detect_constancy, TolerancePolicy};
use eikonal_core::testkit::{random_null_lift, random_reparameterized_curve, Rng};

#[test]
fn residuals_on_random_reparameterized_curves() {
    let policy = TolerancePolicy::default();
    let mut rng = Rng::new(0x1234);
    for i in 0..10 {
        let timelike = i % 2 == 1;
        let c = random_reparameterized_curve(&mut rng, timelike).unwrap();
        let trace = frame_trace(&c, &policy).unwrap();
        assert_eq!(trace.kind(), "non-null");
        let ode = frame_ode_residual(&trace);
        let rot = darboux_rotation_residual(&trace);
        assert!(ode < 1e-6, "curve {i}: frame ODE residual {ode}");
        assert!(rot < 1e-6, "curve {i}: Darboux rotation residual {rot}");
    }
}

#[test]
fn orthonormality_on_random_reparameterized_curves() {
    let policy = TolerancePolicy::default();
    let mut rng = Rng::new(0x7777);
    for i in 0..4 {
        let c = random_reparameterized_curve(&mut rng, i % 2 == 0).unwrap();
        let FrameTrace::NonNull(samples) = frame_trace(&c, &policy).unwrap() else {
            panic!("expected non-null trace");
        };
        for f in &samples {
            let vs = [f.v1.value(), f.v2.value(), f.v3.value()];
            let eps = [f.eps1, f.eps2, f.eps3];
            for a in 0..3 {
                for b in 0..3 {
                    let expect = if a == b { f64::from(eps[a]) } else { 0.0 };
                    let got = vs[a].minkowski_inner(vs[b]);
                    assert!(
                        (got - expect).abs() < 1e-9,
                        "curve {i}, s = {}: g(V{}, V{}) = {got}",
                        f.s,
                        a + 1,
                        b + 1
                    );
                }
            }
        }
    }
}

#[test]
fn residuals_and_pairing_conditions_on_random_null_lifts() {
    let policy = TolerancePolicy::default();
    let mut rng = Rng::new(0x9999);
    for i in 0..10 {
        let lift = random_null_lift(&mut rng).unwrap();
        let trace = frame_trace(&lift, &policy).unwrap();
        assert_eq!(trace.kind(), "null");
        let ode = frame_ode_residual(&trace);
        let rot = darboux_rotation_residual(&trace);
        assert!(ode < 1e-6, "lift {i}: frame ODE residual {ode}");
        assert!(rot < 1e-6, "lift {i}: Darboux rotation residual {rot}");

        let FrameTrace::Null(samples) = &trace else { unreachable!() };
        for f in samples {
            let (v1, v2, v3) = (f.v1.value(), f.v2.value(), f.v3.value());
            assert!(v1.minkowski_inner(v1).abs() < 1e-9);
            assert!(v2.minkowski_inner(v2).abs() < 1e-9);
            assert!((v1.minkowski_inner(v2) - 1.0).abs() < 1e-9);
            assert!(v1.minkowski_inner(v3).abs() < 1e-9);
            assert!(v2.minkowski_inner(v3).abs() < 1e-9);
            assert!((v3.minkowski_inner(v3) - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn determinant_identity_on_random_null_lifts() {
    let policy = TolerancePolicy::default();
    let mut rng = Rng::new(0xaaaa);
    let mut saw_nonzero = false;
    for i in 0..10 {
        let lift = random_null_lift(&mut rng).unwrap();
        let FrameTrace::Null(samples) = frame_trace(&lift, &policy).unwrap() else {
            panic!("expected null trace");
        };
        let report = theorem_3_3_det_check(&samples, &policy).unwrap();
        assert!(!report.vacuous, "lift {i}: {:?}", report.hypotheses);
        let Some(Conclusion::Residual(rel)) = report.conclusion("identity relative difference")
        else {
            panic!("missing identity conclusion");
        };
        assert!(*rel < 1e-5, "lift {i}: relative difference {rel}");

        // non-constant kappa/tau must show up as a nonzero determinant
        let ratio: Vec<f64> = samples
            .iter()
            .map(|f| f.kappa.value() / f.tau.value())
            .collect();
        if !detect_constancy(&ratio, &policy).unwrap().is_constant {
            let Some(Conclusion::Residual(max_det)) = report.conclusion("max determinant") else {
                panic!("missing determinant conclusion");
            };
            assert!(*max_det > 1e-6, "lift {i}: determinant unexpectedly zero");
            saw_nonzero = true;
        }
    }
    assert!(saw_nonzero, "family never produced a non-helix sample");
}

#[test]
fn reparameterized_curves_keep_their_grid_and_domain() {
    let mut rng = Rng::new(0xbeef);
    let c = random_reparameterized_curve(&mut rng, false).unwrap();
    let (a, b) = c.domain();
    assert_eq!(a, 0.0);
    assert!(b > 0.0);
    let grid = c.sample_grid();
    assert_eq!(grid.len(), c.n_samples());
    assert!(grid.windows(2).all(|w| w[1] > w[0]));
}
