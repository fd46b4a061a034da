//! Norm-form equations over an ambient field given in a power basis.

pub mod ambient;
pub mod solve;

pub use ambient::{AmbientElem, AmbientField, PatternBasis};
pub use solve::{
    candidate_count, canonical_sign, solve_norm_equation, NormEquation, PatternSolution,
};
