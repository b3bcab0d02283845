//! Frame fields along curves: Frenet frames for non-null unit-speed curves,
//! Cartan frames for null curves, Darboux vectors, frame traces and the
//! residual validators for the frame ODEs.
//!
//! Non-null convention: `V1 = a'`, `kappa = sqrt|g(a'', a'')| > 0`,
//! `V2 = a''/(eps2*kappa)` (so `D V1 = eps2*kappa*V2` holds exactly),
//! `V3 = eps1*eps2*(V1 x V2)`, `eps3 = -eps1*eps2`, and
//! `tau = -g(V2', V3)`. With `kappa > 0` enforced, the construction leaves
//! no sign freedom; downstream checks only use orientation-invariant
//! quantities.
//!
//! Null convention (pseudo-orthonormal): `V1 = a'`,
//! `kappa = sqrt(g(a'', a''))`, `V3 = a''/kappa`, and `V2` is the unique
//! vector with `g(V2,V2) = 0`, `g(V1,V2) = 1`, `g(V2,V3) = 0`. The
//! constructor additionally requires `V1 x V2 = V3`; curves whose frame
//! solves the pairing constraints with the opposite orientation are
//! rejected.

use crate::curve::Curve;
use crate::error::Error;
use crate::jetvec::JetVec3;
use crate::lorentz::{CausalCharacter, Vec3M};
use crate::numerics::constancy::TolerancePolicy;
use crate::numerics::jet::Jet;
use crate::Result;

/// Frenet frame of a non-null curve at one parameter value.
#[derive(Debug, Clone, Copy)]
pub struct NonNullFrame {
    pub s: f64,
    pub v1: Vec3M,
    pub v2: Vec3M,
    pub v3: Vec3M,
    pub kappa: f64,
    pub tau: f64,
    pub eps1: i8,
    pub eps2: i8,
    pub eps3: i8,
}

/// Cartan frame of a null curve at one parameter value.
#[derive(Debug, Clone, Copy)]
pub struct NullCartanFrame {
    pub s: f64,
    pub v1: Vec3M,
    pub v2: Vec3M,
    pub v3: Vec3M,
    pub kappa: f64,
    pub tau: f64,
}

/// Frenet frame with jet-valued entries; derivatives of the frame come from
/// differentiating the construction itself.
#[derive(Debug, Clone)]
pub struct NonNullFrameJets {
    pub s: f64,
    pub v1: JetVec3,
    pub v2: JetVec3,
    pub v3: JetVec3,
    pub kappa: Jet,
    /// One order lower than the frame vectors (it already holds one
    /// derivative of `V2`).
    pub tau: Jet,
    pub eps1: i8,
    pub eps2: i8,
    pub eps3: i8,
}

impl NonNullFrameJets {
    pub fn value(&self) -> NonNullFrame {
        NonNullFrame {
            s: self.s,
            v1: self.v1.value(),
            v2: self.v2.value(),
            v3: self.v3.value(),
            kappa: self.kappa.value(),
            tau: self.tau.value(),
            eps1: self.eps1,
            eps2: self.eps2,
            eps3: self.eps3,
        }
    }
}

/// Cartan frame with jet-valued entries.
#[derive(Debug, Clone)]
pub struct NullFrameJets {
    pub s: f64,
    pub v1: JetVec3,
    pub v2: JetVec3,
    pub v3: JetVec3,
    pub kappa: Jet,
    pub tau: Jet,
}

impl NullFrameJets {
    pub fn value(&self) -> NullCartanFrame {
        NullCartanFrame {
            s: self.s,
            v1: self.v1.value(),
            v2: self.v2.value(),
            v3: self.v3.value(),
            kappa: self.kappa.value(),
            tau: self.tau.value(),
        }
    }
}

/// Frame jets need one derivative of `V2` (for `tau`) and two of the
/// curve beyond the frame order, so 1..=4 is the valid range.
fn check_frame_order(order: usize) -> Result<()> {
    if !(1..=4).contains(&order) {
        return Err(Error::Order { requested: order, max: 4 });
    }
    Ok(())
}

fn curve_jet_vectors(c: &dyn Curve, s: f64, order: usize) -> Result<(JetVec3, JetVec3)> {
    let jets = c.component_jets(s, order)?;
    let alpha = JetVec3::from_components(jets);
    let d1 = alpha.differentiate();
    let d2 = d1.differentiate();
    Ok((d1, d2))
}

/// Frenet frame with jets of order `order` (frame vectors); requires curve
/// jets of order `order + 2`, so `order <= 4`.
pub fn frenet_nonnull_jets(
    c: &dyn Curve,
    s: f64,
    order: usize,
    tol: f64,
) -> Result<NonNullFrameJets> {
    check_frame_order(order)?;
    let (d1, d2) = curve_jet_vectors(c, s, order + 2)?;
    let q1 = d1.minkowski_inner(&d1);
    let speed = q1.value();
    if (speed.abs() - 1.0).abs() > tol {
        return Err(Error::NotUnitSpeed { s, speed });
    }
    let eps1: i8 = if speed > 0.0 { 1 } else { -1 };

    let q2 = d2.minkowski_inner(&d2);
    let accel = q2.value();
    if accel.abs() <= tol {
        return Err(Error::DegenerateNormal { s, value: accel });
    }
    let eps2: i8 = if accel > 0.0 { 1 } else { -1 };
    let eps3 = -eps1 * eps2;

    let kappa = (q2 * f64::from(eps2)).sqrt()?; // sqrt|g(a'',a'')|, order `order`
    let v1 = d1.truncated(order + 1);
    let v2 = d2.div(&(kappa * f64::from(eps2)))?;
    let v3 = v1.lorentz_cross(&v2).scale_f64(f64::from(eps1 * eps2));
    // row 2 of the Frenet matrix: D V2 = -eps1 kappa V1 - eps3 tau V3
    let tau = -(v2.differentiate().minkowski_inner(&v3));

    Ok(NonNullFrameJets {
        s,
        v1: v1.truncated(order),
        v2: v2.truncated(order),
        v3: v3.truncated(order),
        kappa,
        tau,
        eps1,
        eps2,
        eps3,
    })
}

/// Frenet frame at `s` (value level).
pub fn frenet_nonnull(c: &dyn Curve, s: f64, tol: f64) -> Result<NonNullFrame> {
    Ok(frenet_nonnull_jets(c, s, 1, tol)?.value())
}

/// Cartan frame with jets of order `order`; requires curve jets of order
/// `order + 2`, so `order <= 4`. The auxiliary seed defaults to the
/// time-flipped tangent, which always pairs positively with a null `V1`.
pub fn cartan_null_jets(c: &dyn Curve, s: f64, order: usize, tol: f64) -> Result<NullFrameJets> {
    cartan_null_jets_with_seed(c, s, order, tol, None)
}

/// Cartan frame construction with an explicit auxiliary seed vector; used
/// to demonstrate that `V2` does not depend on the seed.
pub fn cartan_null_jets_with_seed(
    c: &dyn Curve,
    s: f64,
    order: usize,
    tol: f64,
    seed: Option<Vec3M>,
) -> Result<NullFrameJets> {
    check_frame_order(order)?;
    let (d1, d2) = curve_jet_vectors(c, s, order + 2)?;
    let q1 = d1.minkowski_inner(&d1);
    let speed = q1.value();
    if speed.abs() > tol {
        return Err(Error::NotNull { s, speed });
    }
    let q2 = d2.minkowski_inner(&d2);
    let accel = q2.value();
    // for a null curve g(a'', a'') >= 0, zero exactly when a'' || a'
    if accel <= tol {
        return Err(Error::DegenerateAcceleration { s, value: accel });
    }

    let kappa = q2.sqrt()?;
    let v1 = d1.truncated(order + 1);
    let v3 = d2.div(&kappa)?;

    // V2 from the pairing constraints, starting from any seed w with
    // g(V1, w) != 0:
    //   w' = w - g(w, V3) V3, w'' = w'/g(V1, w'), V2 = w'' - g(w'',w'')/2 V1
    let w = match seed {
        Some(v) => {
            let o = v1.order();
            JetVec3::new(
                Jet::constant(v.c1, o)?,
                Jet::constant(v.c2, o)?,
                Jet::constant(v.c3, o)?,
            )
        }
        None => JetVec3::new(-v1.c1, v1.c2, v1.c3),
    };
    let w = w - v3.scale(&w.minkowski_inner(&v3));
    let pairing = v1.minkowski_inner(&w);
    if pairing.value().abs() <= tol {
        return Err(Error::Precondition(format!(
            "auxiliary seed vector pairs to {} with the tangent at s = {s}",
            pairing.value()
        )));
    }
    let w = w.div(&pairing)?;
    let v2 = w - v1.scale(&(w.minkowski_inner(&w) * 0.5));

    // the paper's frame convention additionally demands V1 x V2 = V3
    let cross = v1.lorentz_cross(&v2).value();
    if (cross - v3.value()).euclid_norm() > 1e-6 {
        return Err(Error::CartanOrientation { s });
    }

    let tau = v2.differentiate().minkowski_inner(&v3);

    Ok(NullFrameJets {
        s,
        v1: v1.truncated(order),
        v2: v2.truncated(order),
        v3: v3.truncated(order),
        kappa,
        tau,
    })
}

/// Cartan frame at `s` (value level).
pub fn cartan_null(c: &dyn Curve, s: f64, tol: f64) -> Result<NullCartanFrame> {
    Ok(cartan_null_jets(c, s, 1, tol)?.value())
}

/// Darboux vector `W = tau V1 - kappa V3` of a non-null frame.
pub fn darboux_nonnull(fr: &NonNullFrame) -> Vec3M {
    fr.v1 * fr.tau - fr.v3 * fr.kappa
}

/// Unit Darboux vector `W0 = W / sqrt|eps3 kappa^2 + eps1 tau^2|`.
pub fn unit_darboux(fr: &NonNullFrame, tol: f64) -> Result<Vec3M> {
    let q = f64::from(fr.eps3) * fr.kappa * fr.kappa + f64::from(fr.eps1) * fr.tau * fr.tau;
    if q.abs() <= tol {
        return Err(Error::LightlikeDarboux { s: fr.s });
    }
    Ok(darboux_nonnull(fr) * (1.0 / q.abs().sqrt()))
}

/// Darboux vector `W = tau V1 - kappa V2` of a null frame.
pub fn darboux_null(fr: &NullCartanFrame) -> Vec3M {
    fr.v1 * fr.tau - fr.v2 * fr.kappa
}

/// Frame samples along the curve's grid; kind is auto-detected from the
/// causal class of the velocity.
#[derive(Debug, Clone)]
pub enum FrameTrace {
    NonNull(Vec<NonNullFrameJets>),
    Null(Vec<NullFrameJets>),
}

/// Jet order carried by non-null trace samples.
pub const NONNULL_TRACE_ORDER: usize = 2;
/// Jet order carried by null trace samples (a third derivative of `V2` is
/// needed downstream).
pub const NULL_TRACE_ORDER: usize = 3;

impl FrameTrace {
    pub fn len(&self) -> usize {
        match self {
            FrameTrace::NonNull(v) => v.len(),
            FrameTrace::Null(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FrameTrace::NonNull(_) => "non-null",
            FrameTrace::Null(_) => "null",
        }
    }

    pub fn s_grid(&self) -> Vec<f64> {
        match self {
            FrameTrace::NonNull(v) => v.iter().map(|f| f.s).collect(),
            FrameTrace::Null(v) => v.iter().map(|f| f.s).collect(),
        }
    }

    pub fn kappa_values(&self) -> Vec<f64> {
        match self {
            FrameTrace::NonNull(v) => v.iter().map(|f| f.kappa.value()).collect(),
            FrameTrace::Null(v) => v.iter().map(|f| f.kappa.value()).collect(),
        }
    }

    pub fn tau_values(&self) -> Vec<f64> {
        match self {
            FrameTrace::NonNull(v) => v.iter().map(|f| f.tau.value()).collect(),
            FrameTrace::Null(v) => v.iter().map(|f| f.tau.value()).collect(),
        }
    }
}

/// Build a frame trace over the curve's sample grid. The causal kind must
/// be uniform; the geometric tolerance is `policy.abs_tol`.
pub fn frame_trace(c: &dyn Curve, policy: &TolerancePolicy) -> Result<FrameTrace> {
    let grid = c.sample_grid();
    let tol = policy.abs_tol;

    let mut kinds = Vec::with_capacity(grid.len());
    for &s in &grid {
        let (_, k) = crate::curve::speed_character(c, s, tol)?;
        kinds.push((s, k));
    }
    let first = kinds[0].1;
    if let Some(&(s_b, _)) = kinds.iter().find(|(_, k)| {
        // spacelike and timelike both build the same frame; null does not
        (*k == CausalCharacter::Null) != (first == CausalCharacter::Null)
    }) {
        return Err(Error::MixedCausality { s_a: kinds[0].0, s_b });
    }

    let trace = if first == CausalCharacter::Null {
        let samples = grid
            .iter()
            .map(|&s| cartan_null_jets(c, s, NULL_TRACE_ORDER, tol))
            .collect::<Result<Vec<_>>>()?;
        FrameTrace::Null(samples)
    } else {
        if let Some(&(s_b, _)) = kinds.iter().find(|(_, k)| *k != first) {
            return Err(Error::MixedCausality { s_a: kinds[0].0, s_b });
        }
        let samples = grid
            .iter()
            .map(|&s| frenet_nonnull_jets(c, s, NONNULL_TRACE_ORDER, tol))
            .collect::<Result<Vec<_>>>()?;
        FrameTrace::NonNull(samples)
    };

    continuity_scan(&trace)?;
    Ok(trace)
}

/// Verify that no frame vector flips sign between adjacent samples.
///
/// Non-null: `g(V_i(s_k), V_i(s_k+1))` must carry the sign of
/// `g(V_i, V_i)`. Null: nearby same-cone null vectors pair non-positively,
/// so continuity is checked through the dual pairings
/// `g(V1(s_k), V2(s_k+1)) > 0`, `g(V2(s_k), V1(s_k+1)) > 0` and the
/// spacelike `g(V3(s_k), V3(s_k+1)) > 0`.
fn continuity_scan(trace: &FrameTrace) -> Result<()> {
    match trace {
        FrameTrace::NonNull(samples) => {
            for (i, w) in samples.windows(2).enumerate() {
                let (a, b) = (&w[0], &w[1]);
                let eps = [f64::from(a.eps1), f64::from(a.eps2), f64::from(a.eps3)];
                let pairs = [
                    a.v1.value().minkowski_inner(b.v1.value()),
                    a.v2.value().minkowski_inner(b.v2.value()),
                    a.v3.value().minkowski_inner(b.v3.value()),
                ];
                for (p, e) in pairs.iter().zip(eps) {
                    if p * e <= 0.0 {
                        return Err(Error::Discontinuity { index: i });
                    }
                }
            }
        }
        FrameTrace::Null(samples) => {
            for (i, w) in samples.windows(2).enumerate() {
                let (a, b) = (&w[0], &w[1]);
                let ok = a.v1.value().minkowski_inner(b.v2.value()) > 0.0
                    && a.v2.value().minkowski_inner(b.v1.value()) > 0.0
                    && a.v3.value().minkowski_inner(b.v3.value()) > 0.0;
                if !ok {
                    return Err(Error::Discontinuity { index: i });
                }
            }
        }
    }
    Ok(())
}

/// Per-sample residual of the frame ODE: the numeric `d/ds V_i` (from the
/// jets) against the matrix right-hand side, worst component norm over i.
pub fn frame_ode_residual_samples(trace: &FrameTrace) -> Vec<f64> {
    match trace {
        FrameTrace::NonNull(samples) => samples
            .iter()
            .map(|f| {
                let (e1, e2, e3) = (f64::from(f.eps1), f64::from(f.eps2), f64::from(f.eps3));
                let (v1, v2, v3) = (f.v1.value(), f.v2.value(), f.v3.value());
                let (k, t) = (f.kappa.value(), f.tau.value());
                let r1 = f.v1.derivative(1) - v2 * (e2 * k);
                let r2 = f.v2.derivative(1) - (v1 * (-e1 * k) + v3 * (-e3 * t));
                let r3 = f.v3.derivative(1) - v2 * (e2 * t);
                [r1, r2, r3].iter().map(|r| r.euclid_norm()).fold(0.0, f64::max)
            })
            .collect(),
        FrameTrace::Null(samples) => samples
            .iter()
            .map(|f| {
                let (v1, v2, v3) = (f.v1.value(), f.v2.value(), f.v3.value());
                let (k, t) = (f.kappa.value(), f.tau.value());
                let r1 = f.v1.derivative(1) - v3 * k;
                let r2 = f.v2.derivative(1) - v3 * t;
                let r3 = f.v3.derivative(1) - (v1 * (-t) + v2 * (-k));
                [r1, r2, r3].iter().map(|r| r.euclid_norm()).fold(0.0, f64::max)
            })
            .collect(),
    }
}

/// Max residual of the frame ODE over the trace.
pub fn frame_ode_residual(trace: &FrameTrace) -> f64 {
    assert!(trace.len() >= 8, "residual needs a trace of at least 8 samples");
    frame_ode_residual_samples(trace).into_iter().fold(0.0, f64::max)
}

/// Per-sample residual of the Darboux rotation identity
/// `d/ds V_i = W x V_i`.
pub fn darboux_rotation_residual_samples(trace: &FrameTrace) -> Vec<f64> {
    match trace {
        FrameTrace::NonNull(samples) => samples
            .iter()
            .map(|f| {
                let frame = f.value();
                let w = darboux_nonnull(&frame);
                [
                    (frame.v1, f.v1.derivative(1)),
                    (frame.v2, f.v2.derivative(1)),
                    (frame.v3, f.v3.derivative(1)),
                ]
                .iter()
                .map(|(vi, d)| (*d - w.lorentz_cross(*vi)).euclid_norm())
                .fold(0.0, f64::max)
            })
            .collect(),
        FrameTrace::Null(samples) => samples
            .iter()
            .map(|f| {
                let frame = f.value();
                let w = darboux_null(&frame);
                [
                    (frame.v1, f.v1.derivative(1)),
                    (frame.v2, f.v2.derivative(1)),
                    (frame.v3, f.v3.derivative(1)),
                ]
                .iter()
                .map(|(vi, d)| (*d - w.lorentz_cross(*vi)).euclid_norm())
                .fold(0.0, f64::max)
            })
            .collect(),
    }
}

/// Max residual of the Darboux rotation identity over the trace.
pub fn darboux_rotation_residual(trace: &FrameTrace) -> f64 {
    assert!(trace.len() >= 8, "residual needs a trace of at least 8 samples");
    darboux_rotation_residual_samples(trace).into_iter().fold(0.0, f64::max)
}
