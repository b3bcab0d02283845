//! Adaptive Simpson quadrature with an explicit subdivision budget.

use crate::error::Error;
use crate::numerics::expr::Expression;
use crate::Result;

/// Default subdivision budget; integrands here are smooth curvature
/// functions, so the budget only trips on genuinely bad input.
pub const DEFAULT_BUDGET: usize = 1 << 20;

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Integrate a callable over `[a, b]` to absolute tolerance `tol`.
pub fn integrate_fn<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("quadrature tolerance must be positive, got {tol}")));
    }
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return Ok(-integrate_fn(f, b, a, tol)?);
    }

    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a)?, f(m)?, f(b)?);
    let whole = simpson(a, b, fa, fm, fb);
    let mut budget = DEFAULT_BUDGET;
    let mut total = 0.0;
    let mut stack = vec![(Panel { a, b, fa, fm, fb, whole }, tol)];

    while let Some((p, eps)) = stack.pop() {
        if budget == 0 {
            return Err(Error::NonConvergence);
        }
        budget -= 1;
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let (flm, frm) = (f(lm)?, f(rm)?);
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.whole;
        if delta.abs() <= 15.0 * eps {
            total += left + right + delta / 15.0;
        } else {
            stack.push((
                Panel { a: p.a, b: m, fa: p.fa, fm: flm, fb: p.fm, whole: left },
                0.5 * eps,
            ));
            stack.push((
                Panel { a: m, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: right },
                0.5 * eps,
            ));
        }
    }
    Ok(total)
}

/// Integrate a univariate expression over `[a, b]`.
pub fn integrate(e: &Expression, a: f64, b: f64, tol: f64) -> Result<f64> {
    integrate_fn(|s| e.eval(&[s]), a, b, tol)
}

/// Cumulative integral of tabulated samples on a uniform grid.
///
/// Each interval is integrated by the cubic through the four surrounding
/// nodes (one-sided at the ends); global error is O(h^4). Used where the
/// integrand exists only as samples.
pub fn cumulative_integral(s: &[f64], f: &[f64]) -> Result<Vec<f64>> {
    let n = s.len();
    if n < 4 || f.len() != n {
        return Err(Error::Domain("cumulative integral needs >= 4 matched samples".into()));
    }
    let h = s[1] - s[0];
    for i in 1..n - 1 {
        if ((s[i + 1] - s[i]) - h).abs() > 1e-9 * h.abs().max(1.0) {
            return Err(Error::Domain("cumulative integral needs a uniform grid".into()));
        }
    }
    let mut out = Vec::with_capacity(n);
    out.push(0.0);
    let mut acc = 0.0;
    for i in 0..n - 1 {
        // cubic Newton-Cotes weights for one step, from nodes (i-1..=i+2)
        // clamped at the boundary
        let step = if i == 0 {
            h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3])
        } else if i == n - 2 {
            h / 24.0 * (9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4])
        } else {
            h / 24.0 * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2])
        };
        acc += step;
        out.push(acc);
    }
    Ok(out)
}
