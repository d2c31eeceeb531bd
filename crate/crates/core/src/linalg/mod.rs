//! Exact linear algebra over the base field.

pub mod echelon;
pub mod matrix;
pub mod modular;

pub use echelon::{Echelon, SparseVec};
pub use matrix::{complement_basis, coordinates_in_span, kernel_basis, rank, ExactMatrix};
