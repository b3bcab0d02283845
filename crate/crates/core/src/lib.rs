//! Numerical toolkit for curves in Minkowski 3-space: Frenet frames for
//! non-null curves, Cartan frames for null curves, eikonal scalar fields,
//! and tolerance-based helix classification.
//!
//! The signature convention is `g(a, b) = -a1*b1 + a2*b2 + a3*b3`; the first
//! coordinate is the timelike one throughout.
//!
//! Module map:
//! - [`lorentz`]: the flat metric, causal characters, the Lorentzian cross
//!   product and triple product.
//! - [`numerics`]: expression parsing, Taylor jets, a finite-difference
//!   oracle, constancy detection and adaptive quadrature.
//! - [`curve`] / [`field`]: parametric curves, arc-length reparameterization,
//!   gradients under two conventions, Hessians and eikonal checks.
//! - [`frame`]: frame construction, Darboux vectors, frame traces and
//!   ODE residual validators.
//! - [`classify`]: helix definitions and theorem checks with hypothesis
//!   gates.
//! - [`witness`]: synthetic pairing datasets built by integrating the frame
//!   ODE systems; used to exercise the theorem checks.

pub mod classify;
pub mod curve;
pub mod error;
pub mod field;
pub mod frame;
pub mod jetvec;
pub mod lorentz;
pub mod numerics;
pub mod testkit;
pub mod witness;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
