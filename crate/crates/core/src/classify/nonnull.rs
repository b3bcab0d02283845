//! Checks for non-null curves: the slant-helix and Darboux-helix
//! definitions, the sigma invariant, axis reconstruction, the curvature
//! ODE system and the norm-of-Darboux biconditional.

use crate::classify::{
    is_helix, jet_values, max_abs, min_abs, AxisDecomposition, Conclusion, HelixVerdict,
    TheoremReport, HESSIAN_GATE_TOL,
};
use crate::error::Error;
use crate::numerics::constancy::{detect_constancy, ConstancyReport, TolerancePolicy};
use crate::numerics::jet::Jet;
use crate::Result;

/// Default tolerance below which `eps3 kappa^2 + eps1 tau^2` counts as
/// lightlike and the unit Darboux vector is undefined.
pub const LIGHTLIKE_TOL: f64 = 1e-9;

/// Frame-dual components of `grad f` along a non-null trace, with
/// jet-valued curvatures. `a_i = eps_i * g(grad f, V_i)`, so that
/// `grad f = a1 V1 + a2 V2 + a3 V3`.
#[derive(Debug, Clone)]
pub struct NonNullPairings {
    pub s: Vec<f64>,
    pub eps1: i8,
    pub eps2: i8,
    pub eps3: i8,
    /// Jets of order >= 1 (for the derivative terms of Eqs. like the sigma
    /// invariant).
    pub kappa: Vec<Jet>,
    pub tau: Vec<Jet>,
    pub a1: Vec<f64>,
    pub a2: Vec<f64>,
    pub a3: Vec<f64>,
    pub grad_norm: Vec<f64>,
    /// Max Hessian entry magnitude over the sampled curve points.
    pub hessian_max: f64,
}

impl NonNullPairings {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn kappa_values(&self) -> Vec<f64> {
        jet_values(&self.kappa)
    }

    pub fn tau_values(&self) -> Vec<f64> {
        jet_values(&self.tau)
    }

    /// `g(grad f, V_i) = eps_i * a_i`.
    pub fn pairing(&self, i: usize) -> Vec<f64> {
        let (eps, a) = match i {
            1 => (self.eps1, &self.a1),
            2 => (self.eps2, &self.a2),
            3 => (self.eps3, &self.a3),
            _ => panic!("pairing index {i} out of range"),
        };
        a.iter().map(|x| f64::from(eps) * x).collect()
    }

    /// `g(W, grad f) = eps1 a1 tau - eps3 a3 kappa`.
    pub fn darboux_pairing(&self) -> Vec<f64> {
        let (e1, e3) = (f64::from(self.eps1), f64::from(self.eps3));
        (0..self.len())
            .map(|i| e1 * self.a1[i] * self.tau[i].value() - e3 * self.a3[i] * self.kappa[i].value())
            .collect()
    }

    /// `eps3 kappa^2 + eps1 tau^2 = g(W, W)`.
    pub fn w_norm_sq_signed(&self) -> Vec<f64> {
        let (e1, e3) = (f64::from(self.eps1), f64::from(self.eps3));
        (0..self.len())
            .map(|i| {
                let k = self.kappa[i].value();
                let t = self.tau[i].value();
                e3 * k * k + e1 * t * t
            })
            .collect()
    }

    /// `g(W0, grad f)`; errors where the Darboux vector is lightlike.
    pub fn unit_darboux_pairing(&self, tol: f64) -> Result<Vec<f64>> {
        let q = self.w_norm_sq_signed();
        let w = self.darboux_pairing();
        q.iter()
            .zip(w)
            .zip(&self.s)
            .map(|((qi, wi), &si)| {
                if qi.abs() <= tol {
                    Err(Error::LightlikeDarboux { s: si })
                } else {
                    Ok(wi / qi.abs().sqrt())
                }
            })
            .collect()
    }

    fn eikonal_report(&self, policy: &TolerancePolicy) -> Result<ConstancyReport> {
        detect_constancy(&self.grad_norm, policy)
    }

    fn hessian_gate(&self) -> bool {
        self.hessian_max <= HESSIAN_GATE_TOL
    }

    fn not_a_helix(&self, policy: &TolerancePolicy) -> Result<bool> {
        let kappa = self.kappa_values();
        let ratio: Vec<f64> = self
            .tau_values()
            .iter()
            .zip(&kappa)
            .map(|(t, k)| t / k)
            .collect();
        Ok(!is_helix(&kappa, &ratio, policy)?)
    }

    fn nonzero_curvatures(&self, policy: &TolerancePolicy) -> bool {
        min_abs(&self.kappa_values()) > policy.abs_tol && min_abs(&self.tau_values()) > policy.abs_tol
    }

    fn standard_hypotheses(
        &self,
        report: &mut TheoremReport,
        policy: &TolerancePolicy,
    ) -> Result<()> {
        report.hypothesis("nonzero curvatures", self.nonzero_curvatures(policy));
        report.hypothesis("not a helix", self.not_a_helix(policy)?);
        report.hypothesis("f eikonal along alpha", self.eikonal_report(policy)?.is_constant);
        report.hypothesis("Hessian H^f = 0", self.hessian_gate());
        Ok(())
    }
}

/// Def 2.1: `g(grad f, V2)` a non-zero constant.
pub fn slant_helix_check(p: &NonNullPairings, policy: &TolerancePolicy) -> Result<HelixVerdict> {
    let report = detect_constancy(&p.pairing(2), policy)?;
    let eik = p.eikonal_report(policy)?;
    Ok(HelixVerdict {
        definition: "non-null f-eikonal slant helix (Def 2.1)".into(),
        report,
        admissible: eik.is_constant && report.is_nonzero,
    })
}

/// Def 2.2: `g(W0, grad f)` constant.
pub fn darboux_helix_check(p: &NonNullPairings, policy: &TolerancePolicy) -> Result<HelixVerdict> {
    let report = detect_constancy(&p.unit_darboux_pairing(LIGHTLIKE_TOL)?, policy)?;
    let eik = p.eikonal_report(policy)?;
    Ok(HelixVerdict {
        definition: "non-null f-eikonal Darboux helix (Def 2.2)".into(),
        report,
        admissible: eik.is_constant,
    })
}

/// Def 2.2 (non-normed): `g(W, grad f)` constant.
pub fn non_normed_darboux_check(
    p: &NonNullPairings,
    policy: &TolerancePolicy,
) -> Result<HelixVerdict> {
    let report = detect_constancy(&p.darboux_pairing(), policy)?;
    let eik = p.eikonal_report(policy)?;
    Ok(HelixVerdict {
        definition: "non-normed non-null f-eikonal Darboux helix (Def 2.2)".into(),
        report,
        admissible: eik.is_constant,
    })
}

/// Cor 2.1: a non-normed Darboux helix is a Darboux helix iff
/// `eps3 kappa^2 + eps1 tau^2` is constant.
pub fn corollary_2_1_check(
    p: &NonNullPairings,
    policy: &TolerancePolicy,
) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("Corollary 2.1");
    let non_normed = non_normed_darboux_check(p, policy)?;
    report.hypothesis("f eikonal along alpha", p.eikonal_report(policy)?.is_constant);
    report.hypothesis("non-normed Darboux pairing constant", non_normed.holds());

    let wq = detect_constancy(&p.w_norm_sq_signed(), policy)?;
    let darboux = darboux_helix_check(p, policy)?;
    let left = wq.is_constant;
    let right = darboux.holds();
    report.conclude("w norm squared constant", Conclusion::Report(wq));
    report.conclude("Darboux pairing constant", Conclusion::Report(darboux.report));
    report.conclude("biconditional", Conclusion::Holds(left == right));
    Ok(report)
}

/// The sampled invariant of Thm 2.1 (i) and its constancy report.
#[derive(Debug, Clone)]
pub struct SigmaInvariant {
    pub samples: Vec<f64>,
    pub report: ConstancyReport,
    /// Sign of `eps1 tau^2 + eps3 kappa^2` (reported because the closed
    /// form takes its absolute value).
    pub darboux_sign: i8,
}

/// `sigma = kappa^2 / |eps1 tau^2 + eps3 kappa^2|^(3/2) * (tau/kappa)'`,
/// with the derivative taken by jet differentiation of the frame
/// construction.
pub fn sigma_invariant(p: &NonNullPairings, policy: &TolerancePolicy) -> Result<SigmaInvariant> {
    let (e1, e3) = (f64::from(p.eps1), f64::from(p.eps3));
    let mut samples = Vec::with_capacity(p.len());
    let mut sign = 0i8;
    for i in 0..p.len() {
        let k = p.kappa[i];
        let t = p.tau[i];
        if k.value() <= 0.0 {
            return Err(Error::Precondition(format!(
                "sigma invariant needs kappa > 0, got {} at s = {}",
                k.value(),
                p.s[i]
            )));
        }
        let q = e1 * t.value() * t.value() + e3 * k.value() * k.value();
        if q.abs() <= LIGHTLIKE_TOL {
            return Err(Error::LightlikeDarboux { s: p.s[i] });
        }
        if sign == 0 {
            sign = if q > 0.0 { 1 } else { -1 };
        }
        let ratio_deriv = t.div(&k)?.derivative(1);
        samples.push(k.value() * k.value() / q.abs().powf(1.5) * ratio_deriv);
    }
    let report = detect_constancy(&samples, policy)?;
    Ok(SigmaInvariant { samples, report, darboux_sign: sign })
}

/// Frame-dual coefficients of the Eq. (13) plane decomposition.
struct AxisCoefficients {
    /// Coefficient of `V2` (`eps2 * median pairing`).
    c_coef: f64,
    /// Coefficient of `W0` (`sign(q) * median g(grad f, W0)`).
    n_coef: f64,
    /// Medians of the raw pairings.
    c_pairing: f64,
    n_pairing: f64,
    w_sign: f64,
}

fn axis_coefficients(p: &NonNullPairings, _policy: &TolerancePolicy) -> Result<AxisCoefficients> {
    let w0 = p.unit_darboux_pairing(LIGHTLIKE_TOL)?;
    let q_median = crate::numerics::constancy::median(&p.w_norm_sq_signed());
    let w_sign = if q_median >= 0.0 { 1.0 } else { -1.0 };
    let c_pairing = crate::numerics::constancy::median(&p.pairing(2));
    let n_pairing = crate::numerics::constancy::median(&w0);
    Ok(AxisCoefficients {
        c_coef: f64::from(p.eps2) * c_pairing,
        n_coef: w_sign * n_pairing,
        c_pairing,
        n_pairing,
        w_sign,
    })
}

/// Residual of `grad f = n W0 + c V2` in frame components, per sample.
fn axis_residual(p: &NonNullPairings, coef: &AxisCoefficients) -> Result<f64> {
    let q = p.w_norm_sq_signed();
    let mut max = 0.0f64;
    for i in 0..p.len() {
        let sq = q[i].abs().sqrt();
        if sq <= LIGHTLIKE_TOL {
            return Err(Error::LightlikeDarboux { s: p.s[i] });
        }
        let r1 = p.a1[i] - coef.n_coef * p.tau[i].value() / sq;
        let r2 = p.a2[i] - coef.c_coef;
        let r3 = p.a3[i] + coef.n_coef * p.kappa[i].value() / sq;
        max = max.max((r1 * r1 + r2 * r2 + r3 * r3).sqrt());
    }
    Ok(max)
}

/// Thm 2.1 (ii) / Thm 2.2 Eq. (13): reconstruct the axis from the constant
/// pairings and measure the defect. Requires the slant verdict.
pub fn axis_reconstruct_nonnull(
    p: &NonNullPairings,
    policy: &TolerancePolicy,
) -> Result<(AxisDecomposition, f64)> {
    let slant = slant_helix_check(p, policy)?;
    if !slant.holds() {
        return Err(Error::Precondition(
            "axis reconstruction requires the slant-helix verdict".into(),
        ));
    }
    let coef = axis_coefficients(p, policy)?;
    let residual = axis_residual(p, &coef)?;
    Ok((
        AxisDecomposition {
            a1: p.a1.clone(),
            a2: p.a2.clone(),
            a3: p.a3.clone(),
            c: coef.c_pairing,
            n: coef.n_pairing,
        },
        residual,
    ))
}

/// Residuals of the two equations of the Cor 2.2 system, evaluated with
/// jet derivatives of the closed forms
/// `a1 = n tau / sqrt|q|`, `a3 = -n kappa / sqrt|q|`, `q = eps1 tau^2 + eps3 kappa^2`.
pub fn ode_system_residual(
    p: &NonNullPairings,
    policy: &TolerancePolicy,
) -> Result<(f64, f64)> {
    let (e1, e3) = (f64::from(p.eps1), f64::from(p.eps3));
    let coef = axis_coefficients(p, policy)?;
    let mut r1 = 0.0f64;
    let mut r2 = 0.0f64;
    for i in 0..p.len() {
        let k = p.kappa[i];
        let t = p.tau[i];
        let q = t.mul(&t) * e1 + k.mul(&k) * e3;
        if q.value().abs() <= LIGHTLIKE_TOL {
            return Err(Error::LightlikeDarboux { s: p.s[i] });
        }
        let sq = (q * coef.w_sign).sqrt()?;
        let a1_fit = (t * coef.n_coef).div(&sq)?;
        let a3_fit = (k * (-coef.n_coef)).div(&sq)?;
        r1 = r1.max((a1_fit.derivative(1) - e1 * k.value() * coef.c_coef).abs());
        r2 = r2.max((a3_fit.derivative(1) - e3 * t.value() * coef.c_coef).abs());
    }
    Ok((r1, r2))
}

/// Thm 2.1: for a slant helix (under the standard hypotheses) the sigma
/// invariant is constant and the axis decomposition of Eq. (10) holds.
pub fn theorem_2_1_check(p: &NonNullPairings, policy: &TolerancePolicy) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("Theorem 2.1");
    p.standard_hypotheses(&mut report, policy)?;
    let slant = slant_helix_check(p, policy)?;
    report.hypothesis("non-null f-eikonal slant helix", slant.strict());

    let sigma = sigma_invariant(p, policy)?;
    report.conclude("sigma constant", Conclusion::Report(sigma.report));
    let coef = axis_coefficients(p, policy)?;
    report.conclude("axis residual", Conclusion::Residual(axis_residual(p, &coef)?));
    report.note("c (median g(grad f, V2))", coef.c_pairing);
    report.note("n (median g(grad f, W0))", coef.n_pairing);
    report.note("sign of eps1 tau^2 + eps3 kappa^2", coef.w_sign);
    Ok(report)
}

/// Thm 2.2: every slant helix (under the hypotheses) is a Darboux helix;
/// `grad f` lies in the plane spanned by `W0` and `V2`.
pub fn theorem_2_2_check(p: &NonNullPairings, policy: &TolerancePolicy) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("Theorem 2.2");
    p.standard_hypotheses(&mut report, policy)?;
    let slant = slant_helix_check(p, policy)?;
    report.hypothesis("non-null f-eikonal slant helix", slant.strict());

    let coef = axis_coefficients(p, policy)?;
    report.conclude("plane decomposition residual", Conclusion::Residual(axis_residual(p, &coef)?));
    let darboux = darboux_helix_check(p, policy)?;
    report.conclude("Darboux pairing constant", Conclusion::Report(darboux.report));
    report.conclude("is Darboux helix", Conclusion::Holds(darboux.holds()));
    Ok(report)
}

/// Cor 2.2: the curvatures of a slant helix satisfy the nonlinear system
/// Eq. (11).
pub fn corollary_2_2_check(p: &NonNullPairings, policy: &TolerancePolicy) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("Corollary 2.2");
    p.standard_hypotheses(&mut report, policy)?;
    let slant = slant_helix_check(p, policy)?;
    report.hypothesis("non-null f-eikonal slant helix", slant.strict());

    let (r1, r2) = ode_system_residual(p, policy)?;
    report.conclude("system residual 1", Conclusion::Residual(r1));
    report.conclude("system residual 2", Conclusion::Residual(r2));
    Ok(report)
}

/// Thm 2.3: a non-normed Darboux helix is a slant helix iff `|W|` is a
/// non-zero constant.
pub fn theorem_2_3_check(p: &NonNullPairings, policy: &TolerancePolicy) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("Theorem 2.3");
    p.standard_hypotheses(&mut report, policy)?;
    let non_normed = non_normed_darboux_check(p, policy)?;
    report.hypothesis("non-normed Darboux pairing constant", non_normed.holds());

    let slant = slant_helix_check(p, policy)?;
    let w_norm: Vec<f64> = p.w_norm_sq_signed().iter().map(|q| q.abs().sqrt()).collect();
    let wn = detect_constancy(&w_norm, policy)?;
    let left = slant.holds();
    let right = wn.is_constant && wn.is_nonzero;
    report.conclude("slant pairing constant", Conclusion::Report(slant.report));
    report.conclude("w norm constant and nonzero", Conclusion::Report(wn));
    report.conclude("biconditional", Conclusion::Holds(left == right));
    report.note("max |w norm deviation|", max_abs(&w_norm) - min_abs(&w_norm));
    Ok(report)
}

/// Orientation flip used by invariance tests: the effect of reversing `V3`
/// (and with it the sign of `tau` and of `a3`) on the stored pairing data.
pub fn flip_orientation(p: &NonNullPairings) -> NonNullPairings {
    let mut q = p.clone();
    q.a3 = q.a3.iter().map(|x| -x).collect();
    q.tau = q.tau.iter().map(|t| -*t).collect();
    q
}
