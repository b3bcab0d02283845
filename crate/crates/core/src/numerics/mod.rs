//! Expression evaluation with high-order derivatives (Taylor jets), an
//! independent finite-difference oracle, constancy detection and adaptive
//! quadrature.

pub mod constancy;
pub mod expr;
pub mod fd;
pub mod jet;
pub mod quad;

pub use constancy::{detect_constancy, ConstancyReport, TolerancePolicy};
pub use expr::{eval_jet, Expression};
pub use fd::finite_diff_oracle;
pub use jet::{Jet, MAX_ORDER};
pub use quad::{integrate, integrate_fn};
