//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Expression text could not be parsed.
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// Evaluation left the domain of a function (log of a non-positive
    /// value, division by zero, fractional power of a negative base, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Requested jet order exceeds the fixed maximum.
    #[error("jet order {requested} exceeds maximum {max}")]
    Order { requested: usize, max: usize },

    #[error("need at least {need} samples, got {got}")]
    InsufficientSamples { got: usize, need: usize },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge within the subdivision budget")]
    NonConvergence,

    #[error("curve is not unit speed at s = {s}: g(a',a') = {speed}")]
    NotUnitSpeed { s: f64, speed: f64 },

    /// g(a'', a'') vanishes: geodesic or lightlike acceleration, no Frenet
    /// frame.
    #[error("degenerate normal at s = {s}: g(a'',a'') = {value}")]
    DegenerateNormal { s: f64, value: f64 },

    #[error("curve is not null at s = {s}: g(a',a') = {speed}")]
    NotNull { s: f64, speed: f64 },

    #[error("degenerate acceleration at s = {s}: g(a'',a'') = {value}")]
    DegenerateAcceleration { s: f64, value: f64 },

    /// Arc-length reparameterization hit a null velocity.
    #[error("curve speed is null at s = {s}")]
    NullCurve { s: f64 },

    #[error("mixed causality: g(a',a') changes class between s = {s_a} and s = {s_b}")]
    MixedCausality { s_a: f64, s_b: f64 },

    /// `eps3*kappa^2 + eps1*tau^2` vanished; the unit Darboux vector is
    /// undefined.
    #[error("lightlike Darboux vector at s = {s}")]
    LightlikeDarboux { s: f64 },

    /// The Cartan frame solving the pairing constraints has
    /// `V1 x V2 = -V3`; the frame convention cannot be satisfied.
    #[error("Cartan frame orientation mismatch at s = {s}: V1 x V2 = -V3")]
    CartanOrientation { s: f64 },

    /// Frame vectors flipped sign between adjacent trace samples.
    #[error("frame discontinuity between trace samples {index} and {next}", next = index + 1)]
    Discontinuity { index: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),
}
