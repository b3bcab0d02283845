//! Vectors in R^3_1 with jet-valued components: the carrier for frame
//! vectors whose s-derivatives are needed downstream.

use crate::lorentz::Vec3M;
use crate::numerics::jet::Jet;
use crate::Result;

#[derive(Debug, Clone, Copy)]
pub struct JetVec3 {
    pub c1: Jet,
    pub c2: Jet,
    pub c3: Jet,
}

impl JetVec3 {
    pub fn new(c1: Jet, c2: Jet, c3: Jet) -> Self {
        JetVec3 { c1, c2, c3 }
    }

    pub fn from_components(c: [Jet; 3]) -> Self {
        JetVec3 { c1: c[0], c2: c[1], c3: c[2] }
    }

    pub fn order(&self) -> usize {
        self.c1.order().min(self.c2.order()).min(self.c3.order())
    }

    /// Value-level vector at the expansion point.
    pub fn value(&self) -> Vec3M {
        Vec3M::new(self.c1.value(), self.c2.value(), self.c3.value())
    }

    /// Value of the k-th derivative vector.
    pub fn derivative(&self, k: usize) -> Vec3M {
        Vec3M::new(self.c1.derivative(k), self.c2.derivative(k), self.c3.derivative(k))
    }

    /// Componentwise derivative jet, one order lower.
    pub fn differentiate(&self) -> JetVec3 {
        JetVec3 {
            c1: self.c1.differentiate(),
            c2: self.c2.differentiate(),
            c3: self.c3.differentiate(),
        }
    }

    pub fn truncated(&self, order: usize) -> JetVec3 {
        JetVec3 {
            c1: self.c1.truncated(order),
            c2: self.c2.truncated(order),
            c3: self.c3.truncated(order),
        }
    }

    /// Jet of `g(self, other)` under the Lorentzian metric.
    pub fn minkowski_inner(&self, other: &JetVec3) -> Jet {
        -(self.c1.mul(&other.c1)) + self.c2.mul(&other.c2) + self.c3.mul(&other.c3)
    }

    /// Jet-valued Lorentzian cross product.
    pub fn lorentz_cross(&self, other: &JetVec3) -> JetVec3 {
        let (u, v) = (self, other);
        JetVec3 {
            c1: u.c2.mul(&v.c3) - u.c3.mul(&v.c2),
            c2: u.c1.mul(&v.c3) - u.c3.mul(&v.c1),
            c3: u.c2.mul(&v.c1) - u.c1.mul(&v.c2),
        }
    }

    pub fn scale(&self, k: &Jet) -> JetVec3 {
        JetVec3 { c1: self.c1.mul(k), c2: self.c2.mul(k), c3: self.c3.mul(k) }
    }

    pub fn scale_f64(&self, k: f64) -> JetVec3 {
        JetVec3 { c1: self.c1 * k, c2: self.c2 * k, c3: self.c3 * k }
    }

    pub fn div(&self, k: &Jet) -> Result<JetVec3> {
        Ok(JetVec3 { c1: self.c1.div(k)?, c2: self.c2.div(k)?, c3: self.c3.div(k)? })
    }
}

impl std::ops::Add for JetVec3 {
    type Output = JetVec3;
    fn add(self, rhs: JetVec3) -> JetVec3 {
        JetVec3 { c1: self.c1 + rhs.c1, c2: self.c2 + rhs.c2, c3: self.c3 + rhs.c3 }
    }
}

impl std::ops::Sub for JetVec3 {
    type Output = JetVec3;
    fn sub(self, rhs: JetVec3) -> JetVec3 {
        JetVec3 { c1: self.c1 - rhs.c1, c2: self.c2 - rhs.c2, c3: self.c3 - rhs.c3 }
    }
}

impl std::ops::Neg for JetVec3 {
    type Output = JetVec3;
    fn neg(self) -> JetVec3 {
        JetVec3 { c1: -self.c1, c2: -self.c2, c3: -self.c3 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn inner_and_cross_agree_with_value_level() {
        let order = 2;
        let s = Jet::variable(0.3, order).unwrap();
        let u = JetVec3::new(s.sinh(), s.cosh(), Jet::constant(1.0, order).unwrap());
        let v = JetVec3::new(s.cos(), s.sin(), s);
        let jet_inner = u.minkowski_inner(&v);
        assert_relative_eq!(
            jet_inner.value(),
            u.value().minkowski_inner(v.value()),
            epsilon = 1e-14
        );
        let jet_cross = u.lorentz_cross(&v).value();
        let val_cross = u.value().lorentz_cross(v.value());
        assert_relative_eq!(jet_cross.c1, val_cross.c1, epsilon = 1e-14);
        assert_relative_eq!(jet_cross.c2, val_cross.c2, epsilon = 1e-14);
        assert_relative_eq!(jet_cross.c3, val_cross.c3, epsilon = 1e-14);
    }

    #[test]
    fn derivative_vector_matches_componentwise_jets() {
        let s = Jet::variable(0.5, 3).unwrap();
        let u = JetVec3::new(s.exp(), s.sin(), s * s);
        let d = u.derivative(1);
        assert_relative_eq!(d.c1, 0.5f64.exp(), epsilon = 1e-13);
        assert_relative_eq!(d.c2, 0.5f64.cos(), epsilon = 1e-13);
        assert_relative_eq!(d.c3, 1.0, epsilon = 1e-13);
    }
}
