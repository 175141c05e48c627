//! Lie-algebraic engine over the rationals.

mod derivation;
mod matrix_algebra;
mod series;
mod tensor;

pub use derivation::{
    derivation_algebra, is_characteristically_nilpotent, is_derivation, CharacteristicNilpotency,
    DerivationAlgebra,
};
pub use matrix_algebra::{
    full_upper_nilpotent, generate_subalgebra, jordan_block, mat_bracket, MatrixLieAlgebra,
};
pub use series::{
    center, derived_series, generators_count, is_ideal, lower_central_series, nilpotency,
    upper_central_series, Nilpotency, SeriesKind, SeriesReport,
};
pub use tensor::{jacobi_check, restrict_to_subalgebra, structure_tensor, StructureTensor};
