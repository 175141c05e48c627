//! Exact linear algebra over the rationals.

mod echelon;
mod matrix;
mod scalar;
mod sparse;
mod subspace;

pub use echelon::{nullspace, rref, Echelon};
pub use matrix::DenseMatrix;
pub use scalar::{format_scalar, parse_scalar, scalar_from_i64, Scalar};
pub use sparse::IntegerSystem;
pub use subspace::Subspace;
