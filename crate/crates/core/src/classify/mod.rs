//! Helix definitions and theorem statements as executable checks.
//!
//! Every check operates on *pairing data*: the frame-dual components of
//! `grad f` along the curve together with jet-valued curvature and torsion.
//! Pairings are either built from a field and a frame trace, or supplied
//! directly (the synthetic witnesses in [`crate::witness`] do the latter).
//!
//! Theorem checks never assert anything themselves: they report their
//! hypotheses, mark the report vacuous when any hypothesis fails, and leave
//! conclusion values for the caller. Test suites assert conclusions only on
//! non-vacuous reports.

pub mod nonnull;
pub mod null;

use crate::curve::{eval_curve, Curve};
use crate::field::{gradient, max_hessian_entry, ScalarFieldSpec};
use crate::frame::{NonNullFrameJets, NullFrameJets};
use crate::numerics::constancy::{detect_constancy, ConstancyReport, TolerancePolicy};
use crate::numerics::jet::Jet;
use crate::Result;

pub use nonnull::NonNullPairings;
pub use null::NullPairings;

/// Hessian-gate tolerance used by the theorem hypothesis `H^f = 0`.
pub use crate::field::HESSIAN_GATE_TOL;

/// Verdict for one helix definition.
#[derive(Debug, Clone)]
pub struct HelixVerdict {
    pub definition: String,
    pub report: ConstancyReport,
    /// Field eikonal along the curve, and the pairing non-zero where the
    /// definition demands it.
    pub admissible: bool,
}

impl HelixVerdict {
    /// The constancy half of the definition; admissibility is reported
    /// separately so biconditional checks stay orientation- and
    /// degeneracy-stable.
    pub fn holds(&self) -> bool {
        self.report.is_constant
    }

    /// Constancy plus the non-zero demand.
    pub fn strict(&self) -> bool {
        self.report.is_constant && self.report.is_nonzero
    }
}

/// One conclusion entry of a theorem report.
#[derive(Debug, Clone)]
pub enum Conclusion {
    /// A residual magnitude that should be small when the theorem applies.
    Residual(f64),
    /// A constancy verdict with its evidence.
    Report(ConstancyReport),
    /// A plain truth value (biconditional outcomes and implications).
    Holds(bool),
    /// A branch that cannot occur under the frame construction.
    Unreachable(&'static str),
}

/// Hypotheses, conclusions and numeric annotations for one theorem.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub theorem: String,
    pub hypotheses: Vec<(String, bool)>,
    pub conclusions: Vec<(String, Conclusion)>,
    /// Named scalars: fitted constants, orientation signs, medians.
    pub notes: Vec<(String, f64)>,
    /// True when any hypothesis fails; conclusions are then reported but
    /// must not be asserted.
    pub vacuous: bool,
}

impl TheoremReport {
    fn new(theorem: &str) -> Self {
        TheoremReport {
            theorem: theorem.to_string(),
            hypotheses: Vec::new(),
            conclusions: Vec::new(),
            notes: Vec::new(),
            vacuous: false,
        }
    }

    fn hypothesis(&mut self, name: &str, ok: bool) {
        self.hypotheses.push((name.to_string(), ok));
        if !ok {
            self.vacuous = true;
        }
    }

    fn conclude(&mut self, name: &str, c: Conclusion) {
        self.conclusions.push((name.to_string(), c));
    }

    fn note(&mut self, name: &str, v: f64) {
        self.notes.push((name.to_string(), v));
    }

    /// Look up a conclusion by name.
    pub fn conclusion(&self, name: &str) -> Option<&Conclusion> {
        self.conclusions.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn hypothesis_value(&self, name: &str) -> Option<bool> {
        self.hypotheses.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

/// Components of `grad f` in the moving frame plus the named constants of
/// the active definition.
#[derive(Debug, Clone)]
pub struct AxisDecomposition {
    pub a1: Vec<f64>,
    pub a2: Vec<f64>,
    pub a3: Vec<f64>,
    /// Median of the pairing named by the active definition.
    pub c: f64,
    /// Median of `g(grad f, W0)` where applicable.
    pub n: f64,
}

pub(crate) fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub(crate) fn min_abs(xs: &[f64]) -> f64 {
    xs.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min)
}

pub(crate) fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

/// "Is a helix" in the degenerate sense used by the hypothesis gates:
/// both `tau/kappa` and `kappa` constant under the policy.
pub(crate) fn is_helix(
    kappa: &[f64],
    ratio: &[f64],
    policy: &TolerancePolicy,
) -> Result<bool> {
    let k = detect_constancy(kappa, policy)?;
    let r = detect_constancy(ratio, policy)?;
    Ok(k.is_constant && r.is_constant)
}

fn grad_along(
    field: &ScalarFieldSpec,
    curve: &dyn Curve,
    s: &[f64],
) -> Result<(Vec<crate::lorentz::Vec3M>, Vec<crate::lorentz::Vec3M>)> {
    let mut positions = Vec::with_capacity(s.len());
    let mut grads = Vec::with_capacity(s.len());
    for &si in s {
        let p = eval_curve(curve, si, 0)?[0];
        positions.push(p);
        grads.push(gradient(field, p)?);
    }
    Ok((positions, grads))
}

impl NonNullPairings {
    /// Pairings of a field along a non-null frame trace.
    pub fn from_field_and_trace(
        field: &ScalarFieldSpec,
        curve: &dyn Curve,
        samples: &[NonNullFrameJets],
    ) -> Result<NonNullPairings> {
        let s: Vec<f64> = samples.iter().map(|f| f.s).collect();
        let (positions, grads) = grad_along(field, curve, &s)?;
        let first = &samples[0];
        let (eps1, eps2, eps3) = (first.eps1, first.eps2, first.eps3);
        let mut p = NonNullPairings {
            s,
            eps1,
            eps2,
            eps3,
            kappa: Vec::new(),
            tau: Vec::new(),
            a1: Vec::new(),
            a2: Vec::new(),
            a3: Vec::new(),
            grad_norm: Vec::new(),
            hessian_max: max_hessian_entry(field, &positions)?,
        };
        for (f, g) in samples.iter().zip(&grads) {
            p.kappa.push(f.kappa);
            p.tau.push(f.tau);
            p.a1.push(f64::from(eps1) * g.minkowski_inner(f.v1.value()));
            p.a2.push(f64::from(eps2) * g.minkowski_inner(f.v2.value()));
            p.a3.push(f64::from(eps3) * g.minkowski_inner(f.v3.value()));
            p.grad_norm.push(g.pseudo_norm());
        }
        Ok(p)
    }
}

impl NullPairings {
    /// Pairings of a field along a null frame trace. The dual pairing swaps
    /// `V1` and `V2`: `a1 = g(grad f, V2)`, `a2 = g(grad f, V1)`,
    /// `a3 = g(grad f, V3)`.
    pub fn from_field_and_trace(
        field: &ScalarFieldSpec,
        curve: &dyn Curve,
        samples: &[NullFrameJets],
    ) -> Result<NullPairings> {
        let s: Vec<f64> = samples.iter().map(|f| f.s).collect();
        let (positions, grads) = grad_along(field, curve, &s)?;
        let mut p = NullPairings {
            s,
            kappa: Vec::new(),
            tau: Vec::new(),
            a1: Vec::new(),
            a2: Vec::new(),
            a3: Vec::new(),
            grad_norm: Vec::new(),
            hessian_max: max_hessian_entry(field, &positions)?,
        };
        for (f, g) in samples.iter().zip(&grads) {
            p.kappa.push(f.kappa);
            p.tau.push(f.tau);
            p.a1.push(g.minkowski_inner(f.v2.value()));
            p.a2.push(g.minkowski_inner(f.v1.value()));
            p.a3.push(g.minkowski_inner(f.v3.value()));
            p.grad_norm.push(g.pseudo_norm());
        }
        Ok(p)
    }
}

/// Max over samples of the Euclidean norm of
/// `grad f - (a1 V1 + a2 V2 + a3 V3)`: validates the frame-dual pairing
/// formulas against the ambient gradient.
pub fn reconstruction_residual(
    field: &ScalarFieldSpec,
    curve: &dyn Curve,
    trace: &crate::frame::FrameTrace,
) -> Result<f64> {
    let mut max = 0.0f64;
    match trace {
        crate::frame::FrameTrace::NonNull(samples) => {
            let p = NonNullPairings::from_field_and_trace(field, curve, samples)?;
            for (i, f) in samples.iter().enumerate() {
                let g = gradient(field, eval_curve(curve, f.s, 0)?[0])?;
                let rec = f.v1.value() * p.a1[i] + f.v2.value() * p.a2[i] + f.v3.value() * p.a3[i];
                max = max.max((g - rec).euclid_norm());
            }
        }
        crate::frame::FrameTrace::Null(samples) => {
            let p = NullPairings::from_field_and_trace(field, curve, samples)?;
            for (i, f) in samples.iter().enumerate() {
                let g = gradient(field, eval_curve(curve, f.s, 0)?[0])?;
                let rec = f.v1.value() * p.a1[i] + f.v2.value() * p.a2[i] + f.v3.value() * p.a3[i];
                max = max.max((g - rec).euclid_norm());
            }
        }
    }
    Ok(max)
}

pub(crate) fn jet_values(jets: &[Jet]) -> Vec<f64> {
    jets.iter().map(|j| j.value()).collect()
}
