use num_traits::Zero;

use super::echelon::{nullspace, Echelon};
use super::matrix::DenseMatrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Linear subspace of K^d stored as its reduced row-echelon basis.
///
/// Equality is entry-wise equality of the basis, which coincides with
/// equality of subspaces because the RREF of a row space is unique.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub(super) fn from_echelon_parts(
        ambient: usize,
        basis: Vec<Vec<Scalar>>,
        pivots: Vec<usize>,
    ) -> Self {
        Self {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::from_echelon_parts(ambient, Vec::new(), Vec::new())
    }

    pub fn full(ambient: usize) -> Self {
        let basis = DenseMatrix::identity(ambient).row_vectors();
        Self::from_echelon_parts(ambient, basis, (0..ambient).collect())
    }

    /// Canonical span of `vectors`, each of length `ambient`.
    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            e.insert(v)?;
        }
        Ok(e.into_subspace())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivots
    }

    /// Incremental builder seeded with this subspace.
    pub fn to_echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient);
        for v in &self.basis {
            e.insert(v).expect("basis rows have ambient length");
        }
        e
    }

    fn check_ambient(&self, d: usize) -> Result<()> {
        if d != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: d,
            });
        }
        Ok(())
    }

    /// Remainder of `v` after clearing the pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_ambient(v.len())?;
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, b) in out.iter_mut().zip(row).skip(p) {
                if !b.is_zero() {
                    *x -= &f * b;
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }

    /// Coefficients of `v` in the echelon basis; `None` if `v` is not a member.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    /// Linear combination of the basis with the given coefficients.
    pub fn combine(&self, coeffs: &[Scalar]) -> Result<Vec<Scalar>> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coeffs.len(),
            });
        }
        let mut out = vec![Scalar::zero(); self.ambient];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, b) in out.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x += c * b;
                }
            }
        }
        Ok(out)
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        other.check_ambient(self.ambient)?;
        for v in &self.basis {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other.ambient)?;
        let mut e = self.to_echelon();
        for v in &other.basis {
            e.insert(v)?;
        }
        Ok(e.into_subspace())
    }

    /// Intersection computed from the kernel of `[S; -T]^t`.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other.ambient)?;
        let (s, t) = (self.dim(), other.dim());
        if s == 0 || t == 0 {
            return Ok(Self::zero(self.ambient));
        }
        // columns are basis vectors of S then -T; a kernel vector (a, b)
        // gives the common element sum a_i s_i
        let mut m = DenseMatrix::zeros(self.ambient, s + t);
        for (k, v) in self.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m[(i, k)] = x.clone();
            }
        }
        for (k, v) in other.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m[(i, s + k)] = -x;
            }
        }
        let kernel = nullspace(&m);
        let common: Vec<Vec<Scalar>> = kernel
            .basis()
            .iter()
            .map(|k| self.combine(&k[..s]))
            .collect::<Result<_>>()?;
        Self::span(self.ambient, &common)
    }

    /// `dim outer - dim self`, requiring `self ⊆ outer`.
    pub fn codim_in(&self, outer: &Self) -> Result<usize> {
        if !self.is_subspace_of(outer)? {
            return Err(Error::ContainmentViolation);
        }
        Ok(outer.dim() - self.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::scalar_from_i64;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().copied().map(scalar_from_i64).collect()
    }

    #[test]
    fn span_examples() {
        assert_eq!(Subspace::span(3, &[]).unwrap().dim(), 0);
        let s = Subspace::span(2, &[v(&[1, 0]), v(&[2, 0])]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), &[v(&[1, 0])]);
        let s = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        assert_eq!(s.basis(), &[v(&[1, 0, -1]), v(&[0, 1, 1])]);
        assert_eq!(s.pivot_cols(), &[0, 1]);
    }

    #[test]
    fn ragged_span_rejected() {
        let err = Subspace::span(2, &[v(&[1, 0]), v(&[1])]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn membership_sum_codim() {
        let x = Subspace::span(2, &[v(&[1, 0])]).unwrap();
        let y = Subspace::span(2, &[v(&[0, 1])]).unwrap();
        assert!(!x.contains(&v(&[0, 1])).unwrap());
        assert_eq!(x.sum(&y).unwrap(), Subspace::full(2));
        let line = Subspace::span(3, &[v(&[1, 0, 0])]).unwrap();
        assert_eq!(line.codim_in(&Subspace::full(3)).unwrap(), 2);
        assert_eq!(
            Subspace::full(3).codim_in(&line).unwrap_err(),
            Error::ContainmentViolation
        );
    }

    #[test]
    fn coordinates_round_trip() {
        let s = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let w = v(&[2, 5, 3]);
        let c = s.coordinates(&w).unwrap().unwrap();
        assert_eq!(s.combine(&c).unwrap(), w);
        assert_eq!(s.coordinates(&v(&[0, 0, 1])).unwrap(), None);
    }

    fn vectors(d: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-4i64..=4, d), 0..5)
    }

    proptest! {
        #[test]
        fn span_is_canonical(vs in vectors(4), scale in proptest::collection::vec(1i64..5, 5), neg in any::<bool>()) {
            let a: Vec<Vec<Scalar>> = vs.iter().map(|x| v(x)).collect();
            let mut b: Vec<Vec<Scalar>> = a
                .iter()
                .zip(&scale)
                .map(|(row, &k)| {
                    let k = scalar_from_i64(if neg { -k } else { k });
                    row.iter().map(|x| x * &k).collect()
                })
                .collect();
            b.reverse();
            let sa = Subspace::span(4, &a).unwrap();
            let sb = Subspace::span(4, &b).unwrap();
            prop_assert_eq!(&sa, &sb);
            prop_assert_eq!(Subspace::span(4, sa.basis()).unwrap(), sa);
        }

        #[test]
        fn sum_dimension_bound(xs in vectors(4), ys in vectors(4)) {
            let a: Vec<Vec<Scalar>> = xs.iter().map(|x| v(x)).collect();
            let b: Vec<Vec<Scalar>> = ys.iter().map(|x| v(x)).collect();
            let s = Subspace::span(4, &a).unwrap();
            let t = Subspace::span(4, &b).unwrap();
            let sum = s.sum(&t).unwrap();
            let meet = s.intersection(&t).unwrap();
            prop_assert!(sum.dim() <= s.dim() + t.dim());
            prop_assert_eq!(sum.dim() == s.dim() + t.dim(), meet.dim() == 0);
            prop_assert_eq!(sum.dim() + meet.dim(), s.dim() + t.dim());
            prop_assert!(meet.is_subspace_of(&s).unwrap() && meet.is_subspace_of(&t).unwrap());
        }
    }
}
