//! Finite-difference derivative estimates: central stencils with one
//! Richardson extrapolation step. This is the independent verification
//! channel for the jet evaluator and is only used by tests.

use crate::error::Error;
use crate::numerics::expr::Expression;
use crate::Result;

fn central<F>(f: &mut F, at: f64, k: usize, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    Ok(match k {
        1 => (f(at + h)? - f(at - h)?) / (2.0 * h),
        2 => (f(at + h)? - 2.0 * f(at)? + f(at - h)?) / (h * h),
        3 => {
            (f(at + 2.0 * h)? - 2.0 * f(at + h)? + 2.0 * f(at - h)? - f(at - 2.0 * h)?)
                / (2.0 * h * h * h)
        }
        4 => {
            (f(at + 2.0 * h)? - 4.0 * f(at + h)? + 6.0 * f(at)? - 4.0 * f(at - h)?
                + f(at - 2.0 * h)?)
                / (h * h * h * h)
        }
        _ => unreachable!(),
    })
}

/// k-th derivative of a callable, `1 <= k <= 4`, by central differences
/// with one Richardson step (O(h^4) truncation).
pub fn finite_diff_fn<F>(mut f: F, at: f64, k: usize, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(1..=4).contains(&k) {
        return Err(Error::Domain(format!("finite difference order {k} outside 1..=4")));
    }
    if !(h > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    let coarse = central(&mut f, at, k, h)?;
    let fine = central(&mut f, at, k, 0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// k-th derivative of a univariate expression at `at`.
pub fn finite_diff_oracle(e: &Expression, at: f64, k: usize, h: f64) -> Result<f64> {
    finite_diff_fn(|s| e.eval(&[s]), at, k, h)
}

/// A step size that balances truncation against roundoff for order `k`.
pub fn suggested_step(k: usize) -> f64 {
    match k {
        1 => 1e-3,
        2 => 3e-3,
        3 => 1.5e-2,
        _ => 4e-2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::expr::Expression;
    use approx::assert_relative_eq;
    use std::collections::BTreeMap;

    fn expr(src: &str) -> Expression {
        Expression::parse(src, &["s"], &BTreeMap::new()).unwrap()
    }

    #[test]
    fn cubic_second_derivative() {
        let e = expr("s^3");
        let d = finite_diff_oracle(&e, 1.0, 2, suggested_step(2)).unwrap();
        assert_relative_eq!(d, 6.0, epsilon = 1e-6);
    }

    #[test]
    fn exp_first_derivative() {
        let e = expr("exp(s)");
        let d = finite_diff_oracle(&e, 0.0, 1, suggested_step(1)).unwrap();
        assert_relative_eq!(d, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn order_range_enforced() {
        let e = expr("s");
        assert!(finite_diff_oracle(&e, 0.0, 5, 1e-3).is_err());
        assert!(finite_diff_oracle(&e, 0.0, 0, 1e-3).is_err());
        assert!(finite_diff_oracle(&e, 0.0, 1, 0.0).is_err());
    }
}
