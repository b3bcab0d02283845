//! Truncated Taylor series arithmetic ("jets").
//!
//! A jet of order `K` carries the value and the first `K` derivatives of a
//! function at a point, with no truncation error beyond floating-point
//! rounding. The maximum order is fixed at 6 so jets stay stack-allocated:
//! the deepest consumer differentiates a null-frame binormal three times,
//! which needs five derivatives of the curve, plus one order of margin.
//!
//! Coefficients are stored in Taylor convention (`c[k] = f^(k)/k!`); the
//! derivative-convention view is exposed through [`Jet::derivative`].

use crate::error::Error;
use crate::Result;

/// Largest supported jet order.
pub const MAX_ORDER: usize = 6;
const LEN: usize = MAX_ORDER + 1;

const FACTORIAL: [f64; LEN] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0];

/// Value plus derivatives up to a fixed order at one expansion point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    order: usize,
    c: [f64; LEN],
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::Order { requested: order, max: MAX_ORDER });
    }
    Ok(())
}

impl Jet {
    /// Jet of the constant function `value`.
    pub fn constant(value: f64, order: usize) -> Result<Jet> {
        check_order(order)?;
        let mut c = [0.0; LEN];
        c[0] = value;
        Ok(Jet { order, c })
    }

    /// Jet of the identity (`d/ds s = 1`) expanded at `value`.
    pub fn variable(value: f64, order: usize) -> Result<Jet> {
        check_order(order)?;
        let mut c = [0.0; LEN];
        c[0] = value;
        if order >= 1 {
            c[1] = 1.0;
        }
        Ok(Jet { order, c })
    }

    /// Build from Taylor coefficients `c[k] = f^(k)/k!`.
    pub fn from_taylor(coeffs: &[f64]) -> Result<Jet> {
        if coeffs.is_empty() {
            return Err(Error::Domain("empty coefficient list".into()));
        }
        check_order(coeffs.len() - 1)?;
        let mut c = [0.0; LEN];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(Jet { order: coeffs.len() - 1, c })
    }

    /// Build an order-1 jet from a value and a first derivative.
    pub fn from_value_deriv(value: f64, deriv: f64) -> Jet {
        let mut c = [0.0; LEN];
        c[0] = value;
        c[1] = deriv;
        Jet { order: 1, c }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Taylor coefficient `f^(k)/k!`.
    pub fn coeff(&self, k: usize) -> f64 {
        debug_assert!(k <= self.order);
        self.c[k]
    }

    /// The `k`-th derivative value.
    pub fn derivative(&self, k: usize) -> f64 {
        debug_assert!(k <= self.order, "derivative {k} beyond jet order {}", self.order);
        self.c[k] * FACTORIAL[k]
    }

    /// All derivative values `[f, f', ..., f^(order)]`.
    pub fn derivatives(&self) -> Vec<f64> {
        (0..=self.order).map(|k| self.derivative(k)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.c[..=self.order].iter().all(|x| x.is_finite())
    }

    /// Jet of the derivative function, one order lower.
    pub fn differentiate(&self) -> Jet {
        debug_assert!(self.order >= 1, "cannot differentiate an order-0 jet");
        let order = self.order - 1;
        let mut c = [0.0; LEN];
        for k in 0..=order {
            c[k] = (k as f64 + 1.0) * self.c[k + 1];
        }
        Jet { order, c }
    }

    /// Same jet truncated to a lower order.
    pub fn truncated(&self, order: usize) -> Jet {
        debug_assert!(order <= self.order);
        let mut c = [0.0; LEN];
        c[..=order].copy_from_slice(&self.c[..=order]);
        Jet { order, c }
    }

    fn binary_order(&self, rhs: &Jet) -> usize {
        self.order.min(rhs.order)
    }

    pub fn mul(&self, rhs: &Jet) -> Jet {
        let order = self.binary_order(rhs);
        let mut c = [0.0; LEN];
        for k in 0..=order {
            let mut acc = 0.0;
            for i in 0..=k {
                acc += self.c[i] * rhs.c[k - i];
            }
            c[k] = acc;
        }
        Jet { order, c }
    }

    pub fn div(&self, rhs: &Jet) -> Result<Jet> {
        if rhs.c[0] == 0.0 {
            return Err(Error::Domain("division by a jet with zero value".into()));
        }
        let order = self.binary_order(rhs);
        let mut q = [0.0; LEN];
        for k in 0..=order {
            let mut acc = self.c[k];
            for i in 0..k {
                acc -= q[i] * rhs.c[k - i];
            }
            q[k] = acc / rhs.c[0];
        }
        Ok(Jet { order, c: q })
    }

    pub fn recip(&self) -> Result<Jet> {
        Jet::constant(1.0, self.order)?.div(self)
    }

    pub fn exp(&self) -> Jet {
        let order = self.order;
        let mut r = [0.0; LEN];
        r[0] = self.c[0].exp();
        for k in 1..=order {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.c[j] * r[k - j];
            }
            r[k] = acc / k as f64;
        }
        Jet { order, c: r }
    }

    pub fn ln(&self) -> Result<Jet> {
        if self.c[0] <= 0.0 {
            return Err(Error::Domain(format!("log of non-positive value {}", self.c[0])));
        }
        let order = self.order;
        let mut r = [0.0; LEN];
        r[0] = self.c[0].ln();
        for k in 1..=order {
            let mut acc = 0.0;
            for j in 1..k {
                acc += j as f64 * r[j] * self.c[k - j];
            }
            r[k] = (self.c[k] - acc / k as f64) / self.c[0];
        }
        Ok(Jet { order, c: r })
    }

    pub fn sqrt(&self) -> Result<Jet> {
        if self.c[0] <= 0.0 {
            return Err(Error::Domain(format!(
                "sqrt of non-positive value {} is not differentiable",
                self.c[0]
            )));
        }
        let order = self.order;
        let mut r = [0.0; LEN];
        r[0] = self.c[0].sqrt();
        for k in 1..=order {
            let mut acc = 0.0;
            for j in 1..k {
                acc += r[j] * r[k - j];
            }
            r[k] = (self.c[k] - acc) / (2.0 * r[0]);
        }
        Ok(Jet { order, c: r })
    }

    fn sin_cos(&self) -> (Jet, Jet) {
        let order = self.order;
        let mut s = [0.0; LEN];
        let mut c = [0.0; LEN];
        s[0] = self.c[0].sin();
        c[0] = self.c[0].cos();
        for k in 1..=order {
            let mut sa = 0.0;
            let mut ca = 0.0;
            for j in 1..=k {
                sa += j as f64 * self.c[j] * c[k - j];
                ca += j as f64 * self.c[j] * s[k - j];
            }
            s[k] = sa / k as f64;
            c[k] = -ca / k as f64;
        }
        (Jet { order, c: s }, Jet { order, c })
    }

    pub fn sin(&self) -> Jet {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Jet {
        self.sin_cos().1
    }

    fn sinh_cosh(&self) -> (Jet, Jet) {
        let order = self.order;
        let mut sh = [0.0; LEN];
        let mut ch = [0.0; LEN];
        sh[0] = self.c[0].sinh();
        ch[0] = self.c[0].cosh();
        for k in 1..=order {
            let mut sa = 0.0;
            let mut ca = 0.0;
            for j in 1..=k {
                sa += j as f64 * self.c[j] * ch[k - j];
                ca += j as f64 * self.c[j] * sh[k - j];
            }
            sh[k] = sa / k as f64;
            ch[k] = ca / k as f64;
        }
        (Jet { order, c: sh }, Jet { order, c: ch })
    }

    pub fn sinh(&self) -> Jet {
        self.sinh_cosh().0
    }

    pub fn cosh(&self) -> Jet {
        self.sinh_cosh().1
    }

    pub fn tanh(&self) -> Jet {
        let (sh, ch) = self.sinh_cosh();
        // cosh >= 1, division cannot fail
        sh.div(&ch).expect("cosh is never zero")
    }

    /// Integer power by repeated multiplication; negative exponents require
    /// a nonzero value.
    pub fn powi(&self, n: i32) -> Result<Jet> {
        if n == 0 {
            return Jet::constant(1.0, self.order);
        }
        let mut base = *self;
        let mut e = n.unsigned_abs();
        let mut acc = Jet::constant(1.0, self.order)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            Ok(acc)
        }
    }

    /// Real power via `exp(p * ln(self))`; requires a positive value.
    pub fn powf(&self, p: f64) -> Result<Jet> {
        let mut r = self.ln()?;
        for k in 0..=r.order {
            r.c[k] *= p;
        }
        Ok(r.exp())
    }

    pub fn abs_value_sign(&self) -> (Jet, f64) {
        if self.c[0] < 0.0 {
            (-*self, -1.0)
        } else {
            (*self, 1.0)
        }
    }

    /// Composition `outer(inner(.))`. The caller must expand `outer` at
    /// `inner.value()`; only the offset series of `inner` is used.
    pub fn compose(outer: &Jet, inner: &Jet) -> Jet {
        let order = outer.order.min(inner.order);
        let mut shifted = inner.truncated(order);
        shifted.c[0] = 0.0;
        let mut r = Jet::constant(outer.c[order], order).expect("order already validated");
        for k in (0..order).rev() {
            r = r.mul(&shifted);
            r.c[0] += outer.c[k];
        }
        r
    }

    /// Series reversion: given `f` with `f.c[0] = 0` and `f.c[1] != 0`,
    /// return `g` with `f(g(t)) = t` up to the jet order.
    pub fn revert(f: &Jet) -> Result<Jet> {
        if f.c[1] == 0.0 {
            return Err(Error::Domain("cannot invert a series with zero slope".into()));
        }
        let order = f.order;
        let mut shifted = *f;
        shifted.c[0] = 0.0;
        let mut g = Jet::constant(0.0, order)?;
        if order >= 1 {
            g.c[1] = 1.0 / f.c[1];
        }
        for m in 2..=order {
            let comp = Jet::compose(&shifted, &g);
            g.c[m] -= comp.c[m] / f.c[1];
        }
        Ok(g)
    }
}

impl std::ops::Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let order = self.binary_order(&rhs);
        let mut c = [0.0; LEN];
        for k in 0..=order {
            c[k] = self.c[k] + rhs.c[k];
        }
        Jet { order, c }
    }
}

impl std::ops::Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        let order = self.binary_order(&rhs);
        let mut c = [0.0; LEN];
        for k in 0..=order {
            c[k] = self.c[k] - rhs.c[k];
        }
        Jet { order, c }
    }
}

impl std::ops::Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        let mut c = [0.0; LEN];
        for k in 0..=self.order {
            c[k] = -self.c[k];
        }
        Jet { order: self.order, c }
    }
}

impl std::ops::Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        Jet::mul(&self, &rhs)
    }
}

impl std::ops::Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        let mut c = [0.0; LEN];
        for k in 0..=self.order {
            c[k] = self.c[k] * rhs;
        }
        Jet { order: self.order, c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sinh_jet_at_zero() {
        let s = Jet::variable(0.0, 3).unwrap().sinh();
        assert_eq!(s.derivatives(), vec![0.0, 1.0, 0.0, 1.0]);
    }

    #[test]
    fn square_jet_at_one() {
        let s = Jet::variable(1.0, 2).unwrap();
        let sq = s * s;
        assert_eq!(sq.derivatives(), vec![1.0, 2.0, 2.0]);
    }

    #[test]
    fn exp_series_coefficients() {
        let e = Jet::variable(0.0, 5).unwrap().exp();
        for k in 0..=5 {
            assert_relative_eq!(e.derivative(k), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn division_round_trip() {
        let x = Jet::variable(0.7, 5).unwrap();
        let a = x.sin() + x.cosh();
        let b = x.exp();
        let q = a.div(&b).unwrap();
        let back = q.mul(&b);
        for k in 0..=5 {
            assert_relative_eq!(back.coeff(k), a.coeff(k), epsilon = 1e-13);
        }
    }

    #[test]
    fn sqrt_consistency() {
        let x = Jet::variable(2.3, 6).unwrap();
        let r = x.sqrt().unwrap();
        let sq = r.mul(&r);
        for k in 0..=6 {
            assert_relative_eq!(sq.coeff(k), x.coeff(k), epsilon = 1e-13);
        }
        assert!(Jet::variable(0.0, 2).unwrap().sqrt().is_err());
    }

    #[test]
    fn powf_matches_powi_on_positive_base() {
        let x = Jet::variable(1.4, 4).unwrap();
        let a = x.powi(3).unwrap();
        let b = x.powf(3.0).unwrap();
        for k in 0..=4 {
            assert_relative_eq!(a.coeff(k), b.coeff(k), epsilon = 1e-12);
        }
    }

    #[test]
    fn order_cap_enforced() {
        assert!(Jet::variable(0.0, 7).is_err());
        assert!(Jet::constant(0.0, 6).is_ok());
    }

    #[test]
    fn compose_chain_rule() {
        // f(u) = sin(u) at u0 = 0.25, u(t) = t^2 at t = 0.5 -> sin(t^2)
        let t = Jet::variable(0.5, 4).unwrap();
        let inner = t * t;
        let outer = Jet::variable(inner.value(), 4).unwrap().sin();
        let composed = Jet::compose(&outer, &inner);
        let direct = (t * t).sin();
        for k in 0..=4 {
            assert_relative_eq!(composed.coeff(k), direct.coeff(k), epsilon = 1e-13);
        }
    }

    #[test]
    fn revert_inverts_series() {
        // f(d) = sinh(d) around 0; g = asinh series
        let f = Jet::variable(0.0, 6).unwrap().sinh();
        let g = Jet::revert(&f).unwrap();
        let id = Jet::compose(&f, &g);
        assert_relative_eq!(id.coeff(1), 1.0, epsilon = 1e-13);
        for k in 2..=6 {
            assert_relative_eq!(id.coeff(k), 0.0, epsilon = 1e-12);
        }
    }
}
