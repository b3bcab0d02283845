//! Scalar fields on R^3_1: gradients under two conventions, Hessians, and
//! the eikonal / parallel-gradient hypothesis checks.
//!
//! Two gradient conventions coexist on purpose. `df(X) = g(grad f, X)`
//! forces the first component of the gradient to be negated
//! (`MetricGradient`), while the worked examples print plain coordinate
//! partials (`CoordinateGradient`) and their constancy claims only hold
//! under that reading. Reports always name the convention used.

use std::collections::BTreeMap;

use crate::curve::{eval_curve, Curve};
use crate::error::Error;
use crate::lorentz::Vec3M;
use crate::numerics::constancy::{detect_constancy, ConstancyReport, TolerancePolicy};
use crate::numerics::expr::Expression;
use crate::numerics::jet::Jet;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GradientConvention {
    /// Plain coordinate partials `(f_x, f_y, f_z)`; reproduces the worked
    /// examples.
    #[default]
    CoordinateGradient,
    /// `(-f_x, f_y, f_z)`, the vector with `g(grad f, X) = X(f)` for all X.
    MetricGradient,
}

impl GradientConvention {
    pub fn name(self) -> &'static str {
        match self {
            GradientConvention::CoordinateGradient => "coordinate",
            GradientConvention::MetricGradient => "metric",
        }
    }
}

/// Expression-defined scalar field `f(x, y, z)` with a gradient convention.
#[derive(Debug, Clone)]
pub struct ScalarFieldSpec {
    pub f: Expression,
    pub convention: GradientConvention,
}

impl ScalarFieldSpec {
    pub fn new(
        f: &str,
        params: &BTreeMap<String, f64>,
        convention: GradientConvention,
    ) -> Result<ScalarFieldSpec> {
        Ok(ScalarFieldSpec { f: Expression::parse(f, &["x", "y", "z"], params)?, convention })
    }

    pub fn value(&self, p: Vec3M) -> Result<f64> {
        self.f.eval(&p.components())
    }

    /// Jet of `t -> f(p + t*dir)`.
    fn directional_jet(&self, p: Vec3M, dir: Vec3M, order: usize) -> Result<Jet> {
        let t = Jet::variable(0.0, order)?;
        let comps = [
            Jet::constant(p.c1, order)? + t * dir.c1,
            Jet::constant(p.c2, order)? + t * dir.c2,
            Jet::constant(p.c3, order)? + t * dir.c3,
        ];
        self.f.eval_jets(&comps)
    }

    /// Directional derivative `d/dt f(p + t*dir)` at `t = 0`.
    pub fn directional_derivative(&self, p: Vec3M, dir: Vec3M) -> Result<f64> {
        Ok(self.directional_jet(p, dir, 1)?.derivative(1))
    }
}

/// Gradient of `f` at `p` under the field's convention.
pub fn gradient(f: &ScalarFieldSpec, p: Vec3M) -> Result<Vec3M> {
    let fx = f.directional_derivative(p, Vec3M::basis(1))?;
    let fy = f.directional_derivative(p, Vec3M::basis(2))?;
    let fz = f.directional_derivative(p, Vec3M::basis(3))?;
    Ok(match f.convention {
        GradientConvention::CoordinateGradient => Vec3M::new(fx, fy, fz),
        GradientConvention::MetricGradient => Vec3M::new(-fx, fy, fz),
    })
}

/// Hessian `H(e_i, e_j) = g(D_{e_i} grad f, e_j)` with the flat coordinate
/// derivative `D` and the field's gradient convention.
///
/// Under `MetricGradient` this is the symmetric matrix of second partials;
/// under `CoordinateGradient` the first column flips sign.
pub fn hessian(f: &ScalarFieldSpec, p: Vec3M) -> Result<[[f64; 3]; 3]> {
    // second directional derivatives; mixed partials by polarization
    let mut quad = [[0.0; 3]; 3];
    let dirs = [Vec3M::basis(1), Vec3M::basis(2), Vec3M::basis(3)];
    let mut pure = [0.0; 3];
    for i in 0..3 {
        pure[i] = f.directional_jet(p, dirs[i], 2)?.derivative(2);
        quad[i][i] = pure[i];
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            let q = f.directional_jet(p, dirs[i] + dirs[j], 2)?.derivative(2);
            let mixed = 0.5 * (q - pure[i] - pure[j]);
            quad[i][j] = mixed;
            quad[j][i] = mixed;
        }
    }
    let eta = [-1.0, 1.0, 1.0];
    let mut h = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            h[i][j] = match f.convention {
                GradientConvention::MetricGradient => quad[i][j],
                GradientConvention::CoordinateGradient => eta[j] * quad[i][j],
            };
        }
    }
    Ok(h)
}

/// Largest Hessian entry magnitude over a point set.
pub fn max_hessian_entry(f: &ScalarFieldSpec, region: &[Vec3M]) -> Result<f64> {
    let mut max = 0.0f64;
    for &p in region {
        let h = hessian(f, p)?;
        for row in h {
            for v in row {
                max = max.max(v.abs());
            }
        }
    }
    Ok(max)
}

/// The hypothesis gate `H^f = 0`: true iff every Hessian entry over the
/// region is at most `tol` in magnitude. In flat space this is exactly
/// "grad f is parallel".
pub fn parallel_gradient_check(f: &ScalarFieldSpec, region: &[Vec3M], tol: f64) -> Result<bool> {
    if region.is_empty() {
        return Err(Error::Precondition("parallel_gradient_check needs a non-empty region".into()));
    }
    Ok(max_hessian_entry(f, region)? <= tol)
}

/// Default tolerance for the `H^f = 0` gate.
pub const HESSIAN_GATE_TOL: f64 = 1e-9;

/// Constancy report for `|grad f|` along the curve's sample grid.
pub fn eikonal_check(
    f: &ScalarFieldSpec,
    c: &dyn Curve,
    policy: &TolerancePolicy,
) -> Result<ConstancyReport> {
    let samples = gradient_norms(f, c)?;
    detect_constancy(&samples, policy)
}

/// `|grad f(alpha(s))|` over the sample grid.
pub fn gradient_norms(f: &ScalarFieldSpec, c: &dyn Curve) -> Result<Vec<f64>> {
    c.sample_grid()
        .into_iter()
        .map(|s| {
            let p = eval_curve(c, s, 0)?[0];
            Ok(gradient(f, p)?.pseudo_norm())
        })
        .collect()
}
