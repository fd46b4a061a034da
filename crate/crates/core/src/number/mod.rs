//! Exact integers, rationals, real quadratic fields and rational intervals.

pub mod interval;
pub mod quadratic;
pub mod rational;

pub use interval::RealInterval;
pub use quadratic::{OmegaKind, QuadraticElement, QuadraticField, QuadraticFieldSpec};
