//! Exact-arithmetic laboratory for nilpotent Lie subalgebras of strictly
//! upper-triangular matrices.
//!
//! The crate is layered bottom-up:
//!
//! * [`linalg`]: rational scalars, dense matrices, reduced row-echelon form,
//!   nullspaces and canonical subspaces.
//! * [`lie`]: bracket closure of matrix generators, structure tensors,
//!   central and derived series, derivation algebras.
//! * [`experiments`]: seeded random experiments on generic two- and
//!   three-generated subalgebras, the reference results table and the
//!   Witt-formula analysis.
//! * [`report`] and [`cli`]: the structured report schema and the
//!   command-line front end.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod lie;
pub mod linalg;
pub mod report;

pub use error::{Error, Result};
pub use linalg::{DenseMatrix, Scalar, Subspace};
