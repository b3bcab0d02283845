//! Parametric curves in R^3_1: expression-backed curves, sampling grids,
//! speed/causal classification and numerical arc-length reparameterization.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::lorentz::{CausalCharacter, Vec3M};
use crate::numerics::expr::Expression;
use crate::numerics::jet::{Jet, MAX_ORDER};
use crate::numerics::quad::integrate_fn;
use crate::Result;

/// A parametric curve with jet-evaluable components.
pub trait Curve {
    fn domain(&self) -> (f64, f64);
    fn n_samples(&self) -> usize;
    /// Component jets `(x, y, z)` of the curve at parameter `s`.
    fn component_jets(&self, s: f64, order: usize) -> Result<[Jet; 3]>;

    /// Uniform sample grid over the domain, endpoints included.
    fn sample_grid(&self) -> Vec<f64> {
        let (a, b) = self.domain();
        let n = self.n_samples();
        (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect()
    }
}

/// Derivative vectors of a curve: entry `k` is the k-th derivative at `s`
/// (entry 0 is the position).
pub fn eval_curve(c: &dyn Curve, s: f64, order: usize) -> Result<Vec<Vec3M>> {
    let jets = c.component_jets(s, order)?;
    Ok((0..=order)
        .map(|k| Vec3M::new(jets[0].derivative(k), jets[1].derivative(k), jets[2].derivative(k)))
        .collect())
}

/// `g(a', a')` and its causal classification at `s`.
pub fn speed_character(c: &dyn Curve, s: f64, tol: f64) -> Result<(f64, CausalCharacter)> {
    let d = eval_curve(c, s, 1)?;
    let q = d[1].minkowski_inner(d[1]);
    Ok((q, d[1].causal_character(tol)))
}

/// Expression-defined curve `alpha(s) = (x(s), y(s), z(s))`.
#[derive(Debug, Clone)]
pub struct CurveSpec {
    pub x: Expression,
    pub y: Expression,
    pub z: Expression,
    pub s_min: f64,
    pub s_max: f64,
    pub n_samples: usize,
}

impl CurveSpec {
    /// Parse and validate a curve; the components must be finite on the
    /// closed domain and the grid must hold at least 8 samples.
    pub fn new(
        x: &str,
        y: &str,
        z: &str,
        params: &BTreeMap<String, f64>,
        s_min: f64,
        s_max: f64,
        n_samples: usize,
    ) -> Result<CurveSpec> {
        if !(s_min < s_max) {
            return Err(Error::Domain(format!("curve domain [{s_min}, {s_max}] is empty")));
        }
        if n_samples < 8 {
            return Err(Error::InsufficientSamples { got: n_samples, need: 8 });
        }
        let spec = CurveSpec {
            x: Expression::parse(x, &["s"], params)?,
            y: Expression::parse(y, &["s"], params)?,
            z: Expression::parse(z, &["s"], params)?,
            s_min,
            s_max,
            n_samples,
        };
        // probe finiteness over a grid denser than the sampling grid
        let probes = 4 * n_samples;
        for i in 0..=probes {
            let s = s_min + (s_max - s_min) * i as f64 / probes as f64;
            let jets = spec.component_jets(s, 0)?;
            if jets.iter().any(|j| !j.is_finite()) {
                return Err(Error::Domain(format!("curve component not finite at s = {s}")));
            }
        }
        Ok(spec)
    }
}

impl Curve for CurveSpec {
    fn domain(&self) -> (f64, f64) {
        (self.s_min, self.s_max)
    }

    fn n_samples(&self) -> usize {
        self.n_samples
    }

    fn component_jets(&self, s: f64, order: usize) -> Result<[Jet; 3]> {
        if order > MAX_ORDER {
            return Err(Error::Order { requested: order, max: MAX_ORDER });
        }
        if s < self.s_min - 1e-12 || s > self.s_max + 1e-12 {
            return Err(Error::Domain(format!(
                "parameter {s} outside curve domain [{}, {}]",
                self.s_min, self.s_max
            )));
        }
        let sj = Jet::variable(s, order)?;
        Ok([self.x.eval_jets(&[sj])?, self.y.eval_jets(&[sj])?, self.z.eval_jets(&[sj])?])
    }
}

/// Tolerance below which `|g(a', a')|` counts as null during
/// reparameterization.
const NULL_SPEED_TOL: f64 = 1e-9;

/// Arc-length reparameterization of a non-null curve.
///
/// Sample-table-backed: a uniform grid in the new parameter `t` in `[0, L]`
/// stores the solved original parameter `s(t)`. Queries interpolate the
/// table with a local degree-9 polynomial to seed a safeguarded Newton
/// solve of `sigma(s) = t`, then build the jet of `s(t)` from the inverse
/// series of the arc-length function, so derivative accuracy is limited
/// only by the solve tolerance.
#[derive(Debug, Clone)]
pub struct SampledCurve {
    base: CurveSpec,
    /// Cumulative arc length at the base grid nodes.
    base_s: Vec<f64>,
    base_sigma: Vec<f64>,
    /// Solved `s` values on the uniform t-grid.
    t_grid: Vec<f64>,
    s_at_t: Vec<f64>,
    length: f64,
    n_samples: usize,
    /// `+1` spacelike, `-1` timelike.
    speed_sign: f64,
}

impl SampledCurve {
    fn speed(&self, s: f64) -> Result<f64> {
        let d = eval_curve(&self.base, s, 1)?;
        let q = d[1].minkowski_inner(d[1]);
        if q.abs() <= NULL_SPEED_TOL {
            return Err(Error::NullCurve { s });
        }
        Ok(q.abs().sqrt())
    }

    /// Arc length from `s_min` to `s`.
    fn sigma(&self, s: f64) -> Result<f64> {
        let idx = match self.base_s.binary_search_by(|x| x.partial_cmp(&s).unwrap()) {
            Ok(i) => i,
            Err(i) => i.saturating_sub(1),
        }
        .min(self.base_s.len() - 1);
        let rest = integrate_fn(|u| self.speed(u), self.base_s[idx], s, 1e-14)?;
        Ok(self.base_sigma[idx] + rest)
    }

    fn invert(&self, t: f64, seed: f64) -> Result<f64> {
        let (mut lo, mut hi) = (self.base_s[0], *self.base_s.last().unwrap());
        let mut s = seed.clamp(lo, hi);
        for _ in 0..60 {
            let err = self.sigma(s)? - t;
            if err.abs() <= 5e-14 * self.length.max(1.0) {
                return Ok(s);
            }
            if err > 0.0 {
                hi = s;
            } else {
                lo = s;
            }
            let step = err / self.speed(s)?;
            let next = s - step;
            s = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
        }
        Ok(s)
    }

    /// Interpolate the table near `t` with a Newton polynomial of the given
    /// degree; returns the interpolated `s` value.
    fn interp_s(&self, t: f64, degree: usize) -> f64 {
        let n = self.t_grid.len();
        let m = degree + 1;
        let h = self.t_grid[1] - self.t_grid[0];
        let center = ((t - self.t_grid[0]) / h).round() as isize;
        let lo = (center - m as isize / 2).clamp(0, (n - m) as isize) as usize;
        // Newton divided differences on the window
        let ts = &self.t_grid[lo..lo + m];
        let mut dd: Vec<f64> = self.s_at_t[lo..lo + m].to_vec();
        for level in 1..m {
            for i in (level..m).rev() {
                dd[i] = (dd[i] - dd[i - 1]) / (ts[i] - ts[i - level]);
            }
        }
        let mut acc = dd[m - 1];
        for i in (0..m - 1).rev() {
            acc = acc * (t - ts[i]) + dd[i];
        }
        acc
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// The solved original parameter at arc length `t`.
    pub fn original_parameter(&self, t: f64) -> Result<f64> {
        let seed = self.interp_s(t, 9);
        self.invert(t, seed)
    }
}

impl Curve for SampledCurve {
    fn domain(&self) -> (f64, f64) {
        (0.0, self.length)
    }

    fn n_samples(&self) -> usize {
        self.n_samples
    }

    fn component_jets(&self, t: f64, order: usize) -> Result<[Jet; 3]> {
        if order > MAX_ORDER {
            return Err(Error::Order { requested: order, max: MAX_ORDER });
        }
        if t < -1e-12 || t > self.length + 1e-12 {
            return Err(Error::Domain(format!(
                "parameter {t} outside reparameterized domain [0, {}]",
                self.length
            )));
        }
        let t = t.clamp(0.0, self.length);
        let s0 = self.original_parameter(t)?;

        if order == 0 {
            let p = self.base.component_jets(s0, 0)?;
            return Ok(p);
        }

        // jet of s(t): invert the series of sigma around s0
        let base_jets = self.base.component_jets(s0, order)?;
        let d1 = [
            base_jets[0].truncated(order).differentiate(),
            base_jets[1].truncated(order).differentiate(),
            base_jets[2].truncated(order).differentiate(),
        ];
        let q = -(d1[0].mul(&d1[0])) + d1[1].mul(&d1[1]) + d1[2].mul(&d1[2]);
        let v = (q * self.speed_sign).sqrt()?; // order - 1
        // sigma(s0 + d) - t = sum v_c[k] d^(k+1)/(k+1)
        let mut sigma_coeffs = vec![0.0];
        for k in 0..=v.order() {
            sigma_coeffs.push(v.coeff(k) / (k as f64 + 1.0));
        }
        let sigma_jet = Jet::from_taylor(&sigma_coeffs)?;
        let mut s_jet = Jet::revert(&sigma_jet)?;
        // expansion point: s(t) = s0 + G(t - t)
        let mut coeffs: Vec<f64> = (0..=s_jet.order()).map(|k| s_jet.coeff(k)).collect();
        coeffs[0] = s0;
        s_jet = Jet::from_taylor(&coeffs)?;

        Ok([
            Jet::compose(&base_jets[0], &s_jet),
            Jet::compose(&base_jets[1], &s_jet),
            Jet::compose(&base_jets[2], &s_jet),
        ])
    }
}

/// Build the arc-length reparameterization of `c`.
///
/// Fails with [`Error::NullCurve`] if the speed is null anywhere on the
/// probe grid and with [`Error::MixedCausality`] if `g(a', a')` changes
/// sign.
pub fn reparameterize_arc_length(c: &CurveSpec) -> Result<SampledCurve> {
    // table values only seed the per-query Newton polish, so a moderate
    // node count loses no accuracy
    let nodes = (4 * c.n_samples).max(256);
    let (a, b) = c.domain();
    let base_s: Vec<f64> =
        (0..=nodes).map(|i| a + (b - a) * i as f64 / nodes as f64).collect();

    // causal screen over the node grid
    let mut sign = 0.0;
    let mut first_s = a;
    for &s in &base_s {
        let d = eval_curve(c, s, 1)?;
        let q = d[1].minkowski_inner(d[1]);
        if q.abs() <= NULL_SPEED_TOL {
            return Err(Error::NullCurve { s });
        }
        if sign == 0.0 {
            sign = q.signum();
            first_s = s;
        } else if q.signum() != sign {
            return Err(Error::MixedCausality { s_a: first_s, s_b: s });
        }
    }

    let mut proto = SampledCurve {
        base: c.clone(),
        base_s: base_s.clone(),
        base_sigma: vec![0.0; base_s.len()],
        t_grid: Vec::new(),
        s_at_t: Vec::new(),
        length: 0.0,
        n_samples: c.n_samples,
        speed_sign: sign,
    };

    let mut acc = 0.0;
    let mut sigma = Vec::with_capacity(base_s.len());
    sigma.push(0.0);
    for w in base_s.windows(2) {
        acc += integrate_fn(|u| proto.speed(u), w[0], w[1], 1e-13)?;
        sigma.push(acc);
    }
    proto.base_sigma = sigma;
    proto.length = acc;

    let t_grid: Vec<f64> =
        (0..=nodes).map(|i| acc * i as f64 / nodes as f64).collect();
    let mut s_at_t = Vec::with_capacity(t_grid.len());
    for (i, &t) in t_grid.iter().enumerate() {
        // the sigma table is monotone; seed from it
        let seed = match proto
            .base_sigma
            .binary_search_by(|x| x.partial_cmp(&t).unwrap())
        {
            Ok(j) => proto.base_s[j],
            Err(j) => {
                let j = j.clamp(1, nodes);
                let (s0, s1) = (proto.base_s[j - 1], proto.base_s[j]);
                let (g0, g1) = (proto.base_sigma[j - 1], proto.base_sigma[j]);
                s0 + (t - g0) / (g1 - g0).max(f64::MIN_POSITIVE) * (s1 - s0)
            }
        };
        let s = if i == 0 {
            a
        } else if i == nodes {
            b
        } else {
            proto.invert(t, seed)?
        };
        s_at_t.push(s);
    }
    proto.t_grid = t_grid;
    proto.s_at_t = s_at_t;
    Ok(proto)
}

/// Null curve lifted from planar data: `alpha = (X(s), y(s), z(s))` with
/// `X' = sqrt(y'^2 + z'^2)`, which makes `g(a', a') = 0` identically. The
/// standard normal form for null curves; requires `y'^2 + z'^2 > 0`.
#[derive(Debug, Clone)]
pub struct NullLiftCurve {
    y: Expression,
    z: Expression,
    s_min: f64,
    s_max: f64,
    n_samples: usize,
    /// Cumulative values of X on a uniform grid (X is only closed-form
    /// when the planar speed is).
    x_nodes: Vec<f64>,
    x_values: Vec<f64>,
}

impl NullLiftCurve {
    pub fn new(
        y: &str,
        z: &str,
        params: &BTreeMap<String, f64>,
        s_min: f64,
        s_max: f64,
        n_samples: usize,
    ) -> Result<NullLiftCurve> {
        if !(s_min < s_max) {
            return Err(Error::Domain(format!("curve domain [{s_min}, {s_max}] is empty")));
        }
        if n_samples < 8 {
            return Err(Error::InsufficientSamples { got: n_samples, need: 8 });
        }
        let mut lift = NullLiftCurve {
            y: Expression::parse(y, &["s"], params)?,
            z: Expression::parse(z, &["s"], params)?,
            s_min,
            s_max,
            n_samples,
            x_nodes: Vec::new(),
            x_values: Vec::new(),
        };
        let nodes = (4 * n_samples).max(256);
        let grid: Vec<f64> =
            (0..=nodes).map(|i| s_min + (s_max - s_min) * i as f64 / nodes as f64).collect();
        for &s in &grid {
            let w = lift.planar_speed(s)?;
            if w <= 1e-9 {
                return Err(Error::Domain(format!(
                    "planar speed sqrt(y'^2 + z'^2) = {w} vanishes at s = {s}"
                )));
            }
        }
        let mut values = Vec::with_capacity(grid.len());
        values.push(0.0);
        let mut acc = 0.0;
        for w in grid.windows(2) {
            acc += integrate_fn(|u| lift.planar_speed(u), w[0], w[1], 1e-13)?;
            values.push(acc);
        }
        lift.x_nodes = grid;
        lift.x_values = values;
        Ok(lift)
    }

    fn planar_speed(&self, s: f64) -> Result<f64> {
        let sj = Jet::variable(s, 1)?;
        let dy = self.y.eval_jets(&[sj])?.derivative(1);
        let dz = self.z.eval_jets(&[sj])?.derivative(1);
        Ok((dy * dy + dz * dz).sqrt())
    }

    fn x_value(&self, s: f64) -> Result<f64> {
        let idx = match self.x_nodes.binary_search_by(|x| x.partial_cmp(&s).unwrap()) {
            Ok(i) => i,
            Err(i) => i.saturating_sub(1),
        }
        .min(self.x_nodes.len() - 1);
        let rest = integrate_fn(|u| self.planar_speed(u), self.x_nodes[idx], s, 1e-13)?;
        Ok(self.x_values[idx] + rest)
    }
}

impl Curve for NullLiftCurve {
    fn domain(&self) -> (f64, f64) {
        (self.s_min, self.s_max)
    }

    fn n_samples(&self) -> usize {
        self.n_samples
    }

    fn component_jets(&self, s: f64, order: usize) -> Result<[Jet; 3]> {
        if order > MAX_ORDER {
            return Err(Error::Order { requested: order, max: MAX_ORDER });
        }
        if s < self.s_min - 1e-12 || s > self.s_max + 1e-12 {
            return Err(Error::Domain(format!(
                "parameter {s} outside curve domain [{}, {}]",
                self.s_min, self.s_max
            )));
        }
        let sj = Jet::variable(s, order)?;
        let yj = self.y.eval_jets(&[sj])?;
        let zj = self.z.eval_jets(&[sj])?;
        let x0 = self.x_value(s)?;
        let xj = if order == 0 {
            Jet::constant(x0, 0)?
        } else {
            let dy = yj.differentiate();
            let dz = zj.differentiate();
            let w = (dy.mul(&dy) + dz.mul(&dz)).sqrt()?; // order - 1
            let mut coeffs = vec![x0];
            for k in 0..=w.order() {
                coeffs.push(w.coeff(k) / (k as f64 + 1.0));
            }
            Jet::from_taylor(&coeffs)?
        };
        Ok([xj, yj, zj])
    }
}
