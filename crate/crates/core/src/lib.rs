//! Power integral bases in composites of a real quadratic field with a cubic
//! or totally complex quartic field.

pub mod cubic;
pub mod endgame;
pub mod error;
pub mod io;
pub mod norm;
pub mod number;
pub mod poly;
pub mod quartic;
pub mod tower;

pub use error::{Error, ErrorCategory, Result};
