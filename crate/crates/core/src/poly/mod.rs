//! Exact polynomial algebra: dense univariate and bivariate polynomials,
//! matrices, resultants and root finding.

pub mod bipoly;
pub mod dense;
pub mod field;
pub mod matrix;
pub mod modular;
pub mod resultant;
pub mod roots;
pub mod unipoly;

pub use bipoly::{BiPoly, Var};
pub use dense::{Poly, PolyRing};
pub use field::{Field, Rationals, Ring};
pub use matrix::Matrix;
pub use modular::resultant_e_multimodular;
pub use resultant::{discriminant, resultant_euclid, resultant_subresultant, resultant_sylvester};
pub use roots::{integer_roots, real_roots};
pub use unipoly::UniPoly;
