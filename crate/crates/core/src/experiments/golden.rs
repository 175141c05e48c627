use serde::Serialize;

/// Reference invariants of a generic two-generated `N(J_m(0), Y)`.
///
/// Lower-central dimensions include the terminal zero term. Sampled
/// codimension-one ideals are never characteristically nilpotent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GoldenRow {
    pub m: usize,
    pub dim: usize,
    pub class: usize,
    pub lower_dims: &'static [usize],
    pub der_dim: usize,
    pub der_nilpotent: bool,
    pub commutant_der_dim: usize,
    pub commutant_der_nilpotent: bool,
    pub codim1_der_nilpotent: bool,
}

pub const GOLDEN_TABLE: [GoldenRow; 7] = [
    row(4, 4, 3, &[4, 2, 1, 0], 7, false, 4),
    row(5, 6, 4, &[6, 4, 3, 1, 0], 10, false, 16),
    row(6, 8, 5, &[8, 6, 5, 3, 1, 0], 12, true, 24),
    row(7, 11, 6, &[11, 9, 8, 6, 3, 1, 0], 18, true, 40),
    row(8, 14, 7, &[14, 12, 11, 9, 6, 3, 1, 0], 21, true, 53),
    row(9, 18, 8, &[18, 16, 15, 13, 10, 6, 3, 1, 0], 27, true, 73),
    row(10, 22, 9, &[22, 20, 19, 17, 14, 10, 6, 3, 1, 0], 32, true, 86),
];

const fn row(
    m: usize,
    dim: usize,
    class: usize,
    lower_dims: &'static [usize],
    der_dim: usize,
    der_nilpotent: bool,
    commutant_der_dim: usize,
) -> GoldenRow {
    GoldenRow {
        m,
        dim,
        class,
        lower_dims,
        der_dim,
        der_nilpotent,
        commutant_der_dim,
        commutant_der_nilpotent: false,
        codim1_der_nilpotent: false,
    }
}

/// Reference invariants of a generic three-generated `N(J_m(0), Y, Z)`.
/// Only dimension, lower series and `Der` are recorded for these.
pub const GOLDEN_THREE_GEN: [GoldenRow; 2] = [
    GoldenRow {
        m: 6,
        dim: 12,
        class: 5,
        lower_dims: &[12, 9, 6, 3, 1, 0],
        der_dim: 16,
        der_nilpotent: true,
        commutant_der_dim: 0,
        commutant_der_nilpotent: false,
        codim1_der_nilpotent: false,
    },
    GoldenRow {
        m: 7,
        dim: 16,
        class: 6,
        lower_dims: &[16, 13, 10, 6, 3, 1, 0],
        der_dim: 22,
        der_nilpotent: true,
        commutant_der_dim: 0,
        commutant_der_nilpotent: false,
        codim1_der_nilpotent: false,
    },
];

/// Leading derived-series dimensions of a generic `N(J_9(0), Y)`.
pub const M9_DERIVED_PREFIX: [usize; 3] = [18, 16, 8];

/// Dimensions of generic `N(X, Y)` for m = 2..=13 as reported; only m ≤ 10
/// is backed by the table above.
pub const REPORTED_DIMENSIONS: [usize; 12] = [1, 3, 4, 6, 8, 11, 14, 18, 22, 26, 35, 42];

pub fn golden_row(m: usize) -> Option<&'static GoldenRow> {
    GOLDEN_TABLE.iter().find(|r| r.m == m)
}

pub fn golden_three_gen_row(m: usize) -> Option<&'static GoldenRow> {
    GOLDEN_THREE_GEN.iter().find(|r| r.m == m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::expected_dimension;

    #[test]
    fn rows_are_self_consistent() {
        for r in GOLDEN_TABLE.iter().chain(&GOLDEN_THREE_GEN) {
            assert_eq!(r.lower_dims[0], r.dim);
            assert_eq!(r.lower_dims.iter().filter(|&&d| d > 0).count(), r.class);
            assert_eq!(r.class, r.m - 1);
            assert_eq!(*r.lower_dims.last().unwrap(), 0);
        }
        for r in &GOLDEN_TABLE {
            assert_eq!(r.dim, expected_dimension(r.m));
            assert_eq!(REPORTED_DIMENSIONS[r.m - 2], r.dim);
            assert_eq!(r.der_nilpotent, r.m >= 6);
        }
    }
}
