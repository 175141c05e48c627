use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Echelon, Scalar, Subspace};
use num_traits::One;

/// `AB - BA`.
pub fn mat_bracket(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.rows(),
        });
    }
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Nilpotent Jordan block `J_m(0)`: ones on the superdiagonal.
pub fn jordan_block(m: usize) -> Result<DenseMatrix> {
    if m == 0 {
        return Err(Error::InvalidOrder(m));
    }
    let mut j = DenseMatrix::zeros(m, m);
    for i in 0..m - 1 {
        j[(i, i + 1)] = Scalar::one();
    }
    Ok(j)
}

/// Bracket-closed subspace of strictly upper-triangular `m×m` matrices.
///
/// The basis is the echelon basis of the flattened coordinates, so two
/// algebras compare equal exactly when they are the same subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixLieAlgebra {
    order: usize,
    basis: Vec<DenseMatrix>,
    coords: Subspace,
}

impl MatrixLieAlgebra {
    /// Wraps a coordinate subspace of `K^{m(m-1)/2}` after checking bracket closure.
    pub fn from_coords(order: usize, coords: Subspace) -> Result<Self> {
        let ambient = order * order.saturating_sub(1) / 2;
        if coords.ambient_dim() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: coords.ambient_dim(),
            });
        }
        let algebra = Self::from_coords_unchecked(order, coords);
        for (i, a) in algebra.basis.iter().enumerate() {
            for b in &algebra.basis[i + 1..] {
                if !algebra.coords.contains(&mat_bracket(a, b)?.flatten_upper())? {
                    return Err(Error::NotASubalgebra);
                }
            }
        }
        Ok(algebra)
    }

    fn from_coords_unchecked(order: usize, coords: Subspace) -> Self {
        let basis = coords
            .basis()
            .iter()
            .map(|v| DenseMatrix::unflatten_upper(order, v).expect("ambient checked"))
            .collect();
        Self {
            order,
            basis,
            coords,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DenseMatrix] {
        &self.basis
    }

    pub fn coords(&self) -> &Subspace {
        &self.coords
    }

    pub fn contains(&self, a: &DenseMatrix) -> Result<bool> {
        if a.rows() != self.order || !a.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.order,
                found: a.rows(),
            });
        }
        Ok(a.is_strictly_upper() && self.coords.contains(&a.flatten_upper())?)
    }
}

/// The algebra `N_m` of all strictly upper-triangular matrices.
pub fn full_upper_nilpotent(m: usize) -> Result<MatrixLieAlgebra> {
    if m < 2 {
        return Err(Error::InvalidOrder(m));
    }
    let ambient = m * (m - 1) / 2;
    Ok(MatrixLieAlgebra::from_coords_unchecked(m, Subspace::full(ambient)))
}

/// Smallest bracket-closed subspace containing `gens`.
///
/// Worklist closure: every newly admitted element is bracketed against all
/// admitted elements, and independent results join the worklist. The raw
/// bracket products are kept (integer entries for integer generators); only
/// membership tests go through the echelon basis.
pub fn generate_subalgebra(gens: &[DenseMatrix]) -> Result<MatrixLieAlgebra> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidGenerator("no generators given".into()))?;
    let m = first.rows();
    for g in gens {
        if !g.is_square() || g.rows() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: g.rows(),
            });
        }
        if !g.is_strictly_upper() {
            return Err(Error::InvalidGenerator(
                "generator is not strictly upper triangular".into(),
            ));
        }
    }
    let mut echelon = Echelon::new(m * m.saturating_sub(1) / 2);
    let mut admitted: Vec<DenseMatrix> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    for g in gens {
        if echelon.insert(&g.flatten_upper())? {
            queue.push_back(g.clone());
        }
    }
    while let Some(x) = queue.pop_front() {
        admitted.push(x);
        let x = admitted.last().expect("just pushed");
        let mut fresh = Vec::new();
        for y in &admitted[..admitted.len() - 1] {
            let z = mat_bracket(x, y)?;
            if z.is_zero() {
                continue;
            }
            if echelon.insert(&z.flatten_upper())? {
                fresh.push(z);
            }
        }
        queue.extend(fresh);
    }
    Ok(MatrixLieAlgebra::from_coords_unchecked(m, echelon.into_subspace()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar_from_i64;

    fn unit(m: usize, i: usize, j: usize) -> DenseMatrix {
        let mut e = DenseMatrix::zeros(m, m);
        e[(i, j)] = Scalar::one();
        e
    }

    #[test]
    fn bracket_examples() {
        let a = DenseMatrix::from_i64_rows(&[vec![0, 2, 1], vec![0, 0, 3], vec![0, 0, 0]]).unwrap();
        assert!(mat_bracket(&a, &a).unwrap().is_zero());
        assert_eq!(
            mat_bracket(&unit(3, 0, 1), &unit(3, 1, 2)).unwrap(),
            unit(3, 0, 2)
        );
        // J3 E12 = 0, E12 J3 = E13, so [J3, E12] = -E13
        let mut neg = DenseMatrix::zeros(3, 3);
        neg[(0, 2)] = scalar_from_i64(-1);
        assert_eq!(mat_bracket(&jordan_block(3).unwrap(), &unit(3, 0, 1)).unwrap(), neg);
        assert!(mat_bracket(&unit(3, 0, 1), &unit(2, 0, 1)).is_err());
    }

    #[test]
    fn jordan_blocks() {
        assert_eq!(jordan_block(1).unwrap(), DenseMatrix::zeros(1, 1));
        assert_eq!(
            jordan_block(2).unwrap(),
            DenseMatrix::from_i64_rows(&[vec![0, 1], vec![0, 0]]).unwrap()
        );
        let j4 = jordan_block(4).unwrap();
        assert_eq!(j4.pow(3).unwrap(), unit(4, 0, 3));
        assert!(j4.pow(4).unwrap().is_zero());
        assert_eq!(jordan_block(0).unwrap_err(), Error::InvalidOrder(0));
    }

    #[test]
    fn full_algebra_dims() {
        assert_eq!(full_upper_nilpotent(2).unwrap().dim(), 1);
        assert_eq!(full_upper_nilpotent(3).unwrap().dim(), 3);
        assert_eq!(full_upper_nilpotent(6).unwrap().dim(), 15);
        let n3 = full_upper_nilpotent(3).unwrap();
        assert_eq!(n3.basis()[0], unit(3, 0, 1));
        assert_eq!(n3.basis()[2], unit(3, 1, 2));
        assert!(full_upper_nilpotent(1).is_err());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(generate_subalgebra(&[DenseMatrix::zeros(4, 4)]).unwrap().dim(), 0);
        let n3 = generate_subalgebra(&[unit(3, 0, 1), unit(3, 1, 2)]).unwrap();
        assert_eq!(n3, full_upper_nilpotent(3).unwrap());
        let commuting = generate_subalgebra(&[unit(4, 0, 1), unit(4, 2, 3)]).unwrap();
        assert_eq!(commuting.dim(), 2);
    }

    #[test]
    fn closure_rejects_bad_generators() {
        assert!(matches!(
            generate_subalgebra(&[DenseMatrix::identity(3)]),
            Err(Error::InvalidGenerator(_))
        ));
        assert!(matches!(
            generate_subalgebra(&[unit(3, 0, 1), unit(4, 0, 1)]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(generate_subalgebra(&[]).is_err());
    }

    #[test]
    fn from_coords_checks_closure() {
        let coords = Subspace::span(3, &[vec![scalar_from_i64(1), scalar_from_i64(0), scalar_from_i64(0)],
            vec![scalar_from_i64(0), scalar_from_i64(0), scalar_from_i64(1)]]).unwrap();
        assert_eq!(MatrixLieAlgebra::from_coords(3, coords).unwrap_err(), Error::NotASubalgebra);
    }
}
