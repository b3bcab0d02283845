//! Deterministic curve generators for validation suites.
//!
//! These produce random-but-reproducible admissible curves: spacelike and
//! timelike curves amenable to arc-length reparameterization, and
//! null-lift curves with usable Cartan frames. Generation is
//! rejection-based against the frame preconditions; every decision is
//! driven by the caller's seed, so suites are repeatable.

use std::collections::BTreeMap;

use crate::curve::{reparameterize_arc_length, CurveSpec, NullLiftCurve, SampledCurve};
use crate::frame::cartan_null_jets;
use crate::Result;

/// SplitMix64; enough randomness for coefficient draws without pulling a
/// dependency into the library.
#[derive(Debug, Clone)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[-1, 1)`.
    pub fn sym(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    }

    /// Uniform in `[lo, hi]`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (self.sym() + 1.0) * 0.5 * (hi - lo)
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.17e}")
}

/// A random non-null curve of the prescribed causal class together with
/// its arc-length reparameterization. Retries seeds until the
/// reparameterized curve admits a Frenet frame on its grid.
pub fn random_reparameterized_curve(rng: &mut Rng, timelike: bool) -> Result<SampledCurve> {
    for _ in 0..64 {
        let (a0, w0, p0) = (rng.range(0.05, 0.2), rng.range(0.6, 1.2), rng.range(-3.0, 3.0));
        let (a1, w1, p1) = (rng.range(0.1, 0.25), rng.range(0.6, 1.2), rng.range(-3.0, 3.0));
        let (a2, w2, p2) = (rng.range(0.1, 0.25), rng.range(0.6, 1.2), rng.range(-3.0, 3.0));
        let (x, y, z) = if timelike {
            (
                format!("1.6*s + {}*sin({}*s + {})", fmt(a0), fmt(w0), fmt(p0)),
                format!("{}*sin({}*s + {})", fmt(a1), fmt(w1), fmt(p1)),
                format!("{}*cos({}*s + {})", fmt(a2), fmt(w2), fmt(p2)),
            )
        } else {
            (
                format!("{}*sin({}*s + {})", fmt(a0), fmt(w0), fmt(p0)),
                format!("s + {}*sin({}*s + {})", fmt(a1), fmt(w1), fmt(p1)),
                format!("{}*cos({}*s + {})", fmt(a2), fmt(w2), fmt(p2)),
            )
        };
        let spec = CurveSpec::new(&x, &y, &z, &BTreeMap::new(), -1.2, 1.2, 32)?;
        let Ok(repar) = reparameterize_arc_length(&spec) else { continue };
        // the frame needs g(a'', a'') bounded away from zero with a single
        // sign over the whole domain; probe finer than the sample grid
        let (lo, hi) = repar.domain();
        let probes = 2 * repar.n_samples();
        let mut sign = 0.0;
        let mut ok = true;
        for i in 0..=probes {
            let t = lo + (hi - lo) * i as f64 / probes as f64;
            let q2 = match crate::curve::eval_curve(&repar, t, 2) {
                Ok(d) => d[2].minkowski_inner(d[2]),
                Err(_) => {
                    ok = false;
                    break;
                }
            };
            if q2.abs() < 1e-3 || (sign != 0.0 && q2.signum() != sign) {
                ok = false;
                break;
            }
            sign = q2.signum();
        }
        if ok {
            return Ok(repar);
        }
    }
    Err(crate::error::Error::Precondition(
        "no admissible random curve found in 64 attempts".into(),
    ))
}

use crate::curve::Curve;

/// A random null-lift curve `(int sqrt(y'^2+z'^2), y, z)` with polynomial
/// planar data, oriented so the Cartan frame convention holds, and with
/// the acceleration bounded away from degeneracy.
pub fn random_null_lift(rng: &mut Rng) -> Result<NullLiftCurve> {
    for _ in 0..64 {
        // y' = b0 + b1 s + b2 s^2 kept positive on [-1, 1]
        let b0 = rng.range(0.8, 1.2);
        let b1 = rng.range(-0.3, 0.3);
        let b2 = rng.range(-0.2, 0.2);
        let c0 = rng.range(-0.6, 0.6);
        let c1 = rng.range(-0.5, 0.5);
        let y = format!("{}*s + {}*s^2 + {}*s^3", fmt(b0), fmt(b1 / 2.0), fmt(b2 / 3.0));
        let z = format!("{}*s + {}*s^2", fmt(c0), fmt(c1 / 2.0));

        // alpha'' parallel to alpha' exactly when y'z'' - z'y'' = 0
        let degenerate = (0..=64).any(|i| {
            let s = -1.0 + 2.0 * i as f64 / 64.0;
            let yp = b0 + b1 * s + b2 * s * s;
            let ypp = b1 + 2.0 * b2 * s;
            let zp = c0 + c1 * s;
            (yp * c1 - zp * ypp).abs() < 5e-3
        });
        if degenerate {
            continue;
        }

        let lift = NullLiftCurve::new(&y, &z, &BTreeMap::new(), -1.0, 1.0, 32)?;
        match cartan_null_jets(&lift, 0.0, 1, 1e-7) {
            Ok(_) => return Ok(lift),
            Err(crate::error::Error::CartanOrientation { .. }) => {
                // reflecting one spacelike coordinate flips the orientation
                let y_flipped = format!("-({y})");
                let lift = NullLiftCurve::new(&y_flipped, &z, &BTreeMap::new(), -1.0, 1.0, 32)?;
                if cartan_null_jets(&lift, 0.0, 1, 1e-7).is_ok() {
                    return Ok(lift);
                }
            }
            Err(_) => continue,
        }
    }
    Err(crate::error::Error::Precondition(
        "no admissible random null curve found in 64 attempts".into(),
    ))
}
