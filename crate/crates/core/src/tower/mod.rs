//! The composite field `K = L·M`: validation, elements and indices.

pub mod algebra;
pub mod element;
pub mod index;
pub mod spec;

pub use algebra::{Extension, Flat};
pub use element::CompositeElement;
pub use index::{absolute_index, char_poly, is_integral, relative_indices, IndexReport};
pub use spec::{validate_tower, LOverM, PairAlgebra, TowerData, TowerSpec};
