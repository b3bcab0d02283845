//! The flat Lorentzian metric of R^3_1, causal classification, pseudo-norms
//! and the Lorentzian cross product.
//!
//! Metric: `g(a, b) = -a1*b1 + a2*b2 + a3*b3`; coordinate 1 is timelike.
//!
//! The cross product is the unique bilinear product with
//! `g(u x v, w) = -det[u; v; w]` for all `w`. On a Lorentz-orthonormal frame
//! with causal characters `(e1, e2, e3)` it reproduces
//! `V_i x V_j = e_i e_j V_k` for cyclic `(i, j, k)`, and on properly
//! oriented null Cartan frames it gives `V1 x V2 = V3`.

use std::ops::{Add, Mul, Neg, Sub};

/// A vector in R^3_1 coordinates. `c1` is the timelike coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3M {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

/// Causal class of a vector under the Lorentzian metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Null,
}

impl CausalCharacter {
    /// The sign `epsilon` attached to the class: +1, -1 or 0.
    pub fn epsilon(self) -> i8 {
        match self {
            CausalCharacter::Spacelike => 1,
            CausalCharacter::Timelike => -1,
            CausalCharacter::Null => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CausalCharacter::Spacelike => "spacelike",
            CausalCharacter::Timelike => "timelike",
            CausalCharacter::Null => "null",
        }
    }
}

impl Vec3M {
    pub const fn new(c1: f64, c2: f64, c3: f64) -> Self {
        Vec3M { c1, c2, c3 }
    }

    pub const fn zero() -> Self {
        Vec3M::new(0.0, 0.0, 0.0)
    }

    /// Coordinate basis vector `e_i`, `i` in 1..=3.
    pub fn basis(i: usize) -> Self {
        match i {
            1 => Vec3M::new(1.0, 0.0, 0.0),
            2 => Vec3M::new(0.0, 1.0, 0.0),
            3 => Vec3M::new(0.0, 0.0, 1.0),
            _ => panic!("basis index {i} out of range"),
        }
    }

    pub fn components(self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    pub fn is_finite(self) -> bool {
        self.c1.is_finite() && self.c2.is_finite() && self.c3.is_finite()
    }

    /// Lorentzian inner product `-u1*v1 + u2*v2 + u3*v3`.
    pub fn minkowski_inner(self, other: Vec3M) -> f64 {
        -(self.c1 * other.c1) + self.c2 * other.c2 + self.c3 * other.c3
    }

    /// The bilinear product fixed by `g(u x v, w) = -det[u; v; w]`.
    pub fn lorentz_cross(self, other: Vec3M) -> Vec3M {
        let (u, v) = (self, other);
        Vec3M::new(
            u.c2 * v.c3 - u.c3 * v.c2,
            u.c1 * v.c3 - u.c3 * v.c1,
            u.c2 * v.c1 - u.c1 * v.c2,
        )
    }

    /// `sqrt(|g(v, v)|)`; vanishes exactly on null vectors.
    pub fn pseudo_norm(self) -> f64 {
        self.minkowski_inner(self).abs().sqrt()
    }

    /// Euclidean component norm; used for residual magnitudes, where a
    /// pseudo-norm could vanish on a nonzero defect.
    pub fn euclid_norm(self) -> f64 {
        (self.c1 * self.c1 + self.c2 * self.c2 + self.c3 * self.c3).sqrt()
    }

    /// Classify by the sign of `g(v, v)`: null when `|g(v,v)| <= tol`.
    ///
    /// The tolerance is absolute; frame vectors are O(1) by construction.
    pub fn causal_character(self, tol: f64) -> CausalCharacter {
        assert!(tol > 0.0, "causal tolerance must be positive");
        let q = self.minkowski_inner(self);
        if q.abs() <= tol {
            CausalCharacter::Null
        } else if q > 0.0 {
            CausalCharacter::Spacelike
        } else {
            CausalCharacter::Timelike
        }
    }

    pub fn scale(self, k: f64) -> Vec3M {
        Vec3M::new(self.c1 * k, self.c2 * k, self.c3 * k)
    }
}

/// Lorentzian triple product `g(u x v, w) = -det[u; v; w]`.
///
/// This is the volume form that takes the value +1 on properly oriented
/// null Cartan frames and `e1*e2*e3` on orthonormal frames built with the
/// `e3 = -e1*e2` convention.
pub fn triple_product(u: Vec3M, v: Vec3M, w: Vec3M) -> f64 {
    u.lorentz_cross(v).minkowski_inner(w)
}

impl Add for Vec3M {
    type Output = Vec3M;
    fn add(self, rhs: Vec3M) -> Vec3M {
        Vec3M::new(self.c1 + rhs.c1, self.c2 + rhs.c2, self.c3 + rhs.c3)
    }
}

impl Sub for Vec3M {
    type Output = Vec3M;
    fn sub(self, rhs: Vec3M) -> Vec3M {
        Vec3M::new(self.c1 - rhs.c1, self.c2 - rhs.c2, self.c3 - rhs.c3)
    }
}

impl Neg for Vec3M {
    type Output = Vec3M;
    fn neg(self) -> Vec3M {
        Vec3M::new(-self.c1, -self.c2, -self.c3)
    }
}

impl Mul<f64> for Vec3M {
    type Output = Vec3M;
    fn mul(self, rhs: f64) -> Vec3M {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: f64, b: f64, c: f64) -> Vec3M {
        Vec3M::new(a, b, c)
    }

    #[test]
    fn inner_on_basis_and_null_vectors() {
        assert_eq!(v(1.0, 0.0, 0.0).minkowski_inner(v(1.0, 0.0, 0.0)), -1.0);
        assert_eq!(v(1.0, 0.0, 1.0).minkowski_inner(v(1.0, 0.0, 1.0)), 0.0);
        assert_eq!(v(2.0, 3.0, 4.0).minkowski_inner(v(1.0, 1.0, 1.0)), 5.0);
    }

    #[test]
    fn cross_on_coordinate_frame() {
        let e1 = Vec3M::basis(1);
        let e2 = Vec3M::basis(2);
        let e3 = Vec3M::basis(3);
        assert_eq!(e2.lorentz_cross(e3), e1);
        assert_eq!(e1.lorentz_cross(e2), -e3);
        // all three cyclic relations V_i x V_j = e_i e_j V_k for (-1, 1, 1)
        assert_eq!(e3.lorentz_cross(e1), -e2);
    }

    #[test]
    fn cross_reproduces_null_frame_relation() {
        // Cartan frame of alpha(s) = (sinh s, cosh s, s) at s = 0
        let v1 = v(1.0, 0.0, 1.0);
        let v2 = v(-0.5, 0.0, 0.5);
        let v3 = v(0.0, 1.0, 0.0);
        let c = v1.lorentz_cross(v2);
        assert!((c - v3).euclid_norm() < 1e-15);
        // the other two relations close on V2 and V1 instead of V1 and V2
        assert!((v2.lorentz_cross(v3) - v2).euclid_norm() < 1e-15);
        assert!((v3.lorentz_cross(v1) - v1).euclid_norm() < 1e-15);
    }

    #[test]
    fn causal_classification_with_tolerance() {
        assert_eq!(v(1.0, 0.0, 1.0).causal_character(1e-12), CausalCharacter::Null);
        assert_eq!(v(0.0, 1.0, 0.0).causal_character(1e-12), CausalCharacter::Spacelike);
        // g = -1 + 1e-18: decisively timelike
        assert_eq!(v(1.0, 1e-9, 0.0).causal_character(1e-12), CausalCharacter::Timelike);
    }

    #[test]
    fn pseudo_norm_values() {
        assert_eq!(v(1.0, 0.0, 0.0).pseudo_norm(), 1.0);
        assert_eq!(v(1.0, 0.0, 1.0).pseudo_norm(), 0.0);
        // gradient of x^2 + y^2 + z along the a = b = 1 helix: sqrt(3) for any u
        for &u in &[-1.5f64, 0.0, 0.3, 2.0] {
            let g = v(2.0 * u.cosh(), 2.0 * u.sinh(), 1.0);
            assert!((g.pseudo_norm() - 3f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn triple_product_orientation_values() {
        let e1 = Vec3M::basis(1);
        let e2 = Vec3M::basis(2);
        let e3 = Vec3M::basis(3);
        // e1*e2*e3 = -1 for the coordinate frame
        assert_eq!(triple_product(e1, e2, e3), -1.0);
        // +1 on the null Cartan frame of Example 3.1 at s = 0
        let v1 = v(1.0, 0.0, 1.0);
        let v2 = v(-0.5, 0.0, 0.5);
        let v3 = v(0.0, 1.0, 0.0);
        assert_eq!(triple_product(v1, v2, v3), 1.0);
    }
}
