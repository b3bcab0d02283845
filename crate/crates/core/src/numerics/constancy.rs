//! Tolerance-based detection of "is a (non-zero) constant along the curve".
//!
//! The paper's definitions assert exact constancy; floating point needs a
//! calibrated surrogate. The rule is median-centered maximum deviation with
//! a combined absolute/relative tolerance. Defaults (abs 1e-7, rel 1e-6)
//! pass the worked examples with margin while rejecting linear drift of
//! slope >= 1e-4 on unit intervals.

use crate::error::Error;
use crate::Result;

/// Combined absolute/relative tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TolerancePolicy {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl TolerancePolicy {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<TolerancePolicy> {
        if !(abs_tol > 0.0 && abs_tol.is_finite() && rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::Domain(format!(
                "tolerances must be positive and finite, got abs {abs_tol}, rel {rel_tol}"
            )));
        }
        Ok(TolerancePolicy { abs_tol, rel_tol })
    }
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy { abs_tol: 1e-7, rel_tol: 1e-6 }
    }
}

/// Verdict and evidence for one sampled quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstancyReport {
    pub n_samples: usize,
    /// Sample median; robust to endpoint artifacts.
    pub center: f64,
    pub max_abs_dev: f64,
    /// `max(|center|, 1)`, the scale the relative tolerance applies to.
    pub scale: f64,
    pub is_constant: bool,
    /// `|center| > abs_tol`; zero-mean noise must not count as non-zero.
    pub is_nonzero: bool,
}

pub(crate) fn median(samples: &[f64]) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("non-finite sample"));
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Classify a sample set as constant / non-constant under `policy`.
pub fn detect_constancy(samples: &[f64], policy: &TolerancePolicy) -> Result<ConstancyReport> {
    if samples.len() < 8 {
        return Err(Error::InsufficientSamples { got: samples.len(), need: 8 });
    }
    if let Some(bad) = samples.iter().find(|x| !x.is_finite()) {
        return Err(Error::Domain(format!("non-finite sample {bad}")));
    }
    let center = median(samples);
    let max_abs_dev = samples
        .iter()
        .map(|x| (x - center).abs())
        .fold(0.0, f64::max);
    let scale = center.abs().max(1.0);
    Ok(ConstancyReport {
        n_samples: samples.len(),
        center,
        max_abs_dev,
        scale,
        is_constant: max_abs_dev <= policy.abs_tol + policy.rel_tol * scale,
        is_nonzero: center.abs() > policy.abs_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_samples() {
        let r = detect_constancy(&[3.0; 64], &TolerancePolicy::default()).unwrap();
        assert!(r.is_constant);
        assert!(r.is_nonzero);
        assert_eq!(r.center, 3.0);
        assert_eq!(r.max_abs_dev, 0.0);
    }

    #[test]
    fn linear_drift_rejected() {
        let samples: Vec<f64> = (0..64).map(|i| i as f64 / 63.0).collect();
        let r = detect_constancy(&samples, &TolerancePolicy::default()).unwrap();
        assert!(!r.is_constant);
    }

    #[test]
    fn zero_center_is_not_nonzero() {
        let samples: Vec<f64> = (0..32).map(|i| if i % 2 == 0 { 1e-9 } else { -1e-9 }).collect();
        let r = detect_constancy(&samples, &TolerancePolicy::default()).unwrap();
        assert!(r.is_constant);
        assert!(!r.is_nonzero);
    }

    #[test]
    fn too_few_samples() {
        assert!(matches!(
            detect_constancy(&[1.0; 7], &TolerancePolicy::default()),
            Err(Error::InsufficientSamples { got: 7, need: 8 })
        ));
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
