use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::series::nilpotency;
use super::tensor::StructureTensor;
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, IntegerSystem, Scalar, Subspace};

/// The Lie algebra `Der(L)` of a structure tensor.
///
/// A derivation is stored as an `n×n` matrix whose column `i` holds the
/// coordinates of `D e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationAlgebra {
    pub base_dim: usize,
    pub der_basis: Vec<DenseMatrix>,
    pub tensor: StructureTensor,
    pub dim: usize,
    space: Subspace,
}

impl DerivationAlgebra {
    /// Derivations as a subspace of `K^{n²}` (row-major flattening).
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Re-checks the Leibniz rule for every basis derivation on every basis
    /// pair, using only the bracket of `t`.
    pub fn satisfies_leibniz(&self, t: &StructureTensor) -> bool {
        self.der_basis.iter().all(|d| is_derivation(t, d))
    }
}

/// `D[e_i, e_j] = [D e_i, e_j] + [e_i, D e_j]` for all `i < j`.
pub fn is_derivation(t: &StructureTensor, d: &DenseMatrix) -> bool {
    let n = t.dim();
    if d.rows() != n || d.cols() != n {
        return false;
    }
    let column = |i: usize| -> Vec<Scalar> { (0..n).map(|k| d[(k, i)].clone()).collect() };
    let images: Vec<Vec<Scalar>> = (0..n).map(column).collect();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.apply(&t.bracket_basis(i, j)).expect("square of size n");
            let mut rhs = t.ad_basis(j, &images[i]).expect("length n");
            for x in rhs.iter_mut() {
                *x = -&*x;
            }
            for (r, x) in rhs.iter_mut().zip(t.ad_basis(i, &images[j]).expect("length n")) {
                *r += x;
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Solves the Leibniz constraints for the `n²` entries of `D`.
///
/// Entry `D[(k, i)]` is unknown `k*n + i`. For each pair `i < j` and output
/// coordinate `l` the constraint reads
/// `sum_k c_ij^k D[l,k] - sum_k c_kj^l D[k,i] - sum_k c_ik^l D[k,j] = 0`.
pub fn derivation_algebra(t: &StructureTensor) -> Result<DerivationAlgebra> {
    let n = t.dim();
    let c: Vec<Scalar> = {
        let mut c = vec![Scalar::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for (k, x) in t.bracket_basis(i, j).into_iter().enumerate() {
                    c[(i * n + j) * n + k] = x;
                }
            }
        }
        c
    };
    let cst = |i: usize, j: usize, k: usize| &c[(i * n + j) * n + k];
    let var = |row: usize, col: usize| row * n + col;

    let mut sys = IntegerSystem::new(n * n);
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for l in 0..n {
                terms.clear();
                for k in 0..n {
                    let a = cst(i, j, k);
                    if !a.is_zero() {
                        terms.push((var(l, k), a.clone()));
                    }
                    let b = cst(k, j, l);
                    if !b.is_zero() {
                        terms.push((var(k, i), -b));
                    }
                    let g = cst(i, k, l);
                    if !g.is_zero() {
                        terms.push((var(k, j), -g));
                    }
                }
                sys.add_equation(&terms)?;
            }
        }
    }
    let space = sys.nullspace();
    let der_basis: Vec<DenseMatrix> = space
        .basis()
        .iter()
        .map(|v| DenseMatrix::from_entries(n, n, v.clone()))
        .collect::<Result<_>>()?;
    let dim = der_basis.len();
    let tensor = StructureTensor::from_fn(dim, |a, b| {
        let x = &der_basis[a];
        let y = &der_basis[b];
        let comm = x.mul(y)?.sub(&y.mul(x)?)?;
        space.coordinates(comm.entries())?.ok_or_else(|| {
            Error::InvariantViolation(format!(
                "commutator of derivations {a},{b} is not a derivation"
            ))
        })
    })?;
    Ok(DerivationAlgebra {
        base_dim: n,
        der_basis,
        tensor,
        dim,
        space,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacteristicNilpotency {
    /// `Der(L)` is nilpotent as a Lie algebra.
    pub verdict: bool,
    pub der_dim: usize,
    /// Every basis derivation is a nilpotent operator (`D^n = 0`).
    pub all_derivations_nilpotent_operators: bool,
}

pub fn is_characteristically_nilpotent(t: &StructureTensor) -> Result<CharacteristicNilpotency> {
    let der = derivation_algebra(t)?;
    Ok(characteristic_nilpotency_of(&der))
}

pub(crate) fn characteristic_nilpotency_of(der: &DerivationAlgebra) -> CharacteristicNilpotency {
    let n = der.base_dim as u32;
    let all_nilpotent = der
        .der_basis
        .iter()
        .all(|d| d.pow(n).map(|p| p.is_zero()).unwrap_or(false));
    CharacteristicNilpotency {
        verdict: nilpotency(&der.tensor).is_nilpotent,
        der_dim: der.dim,
        all_derivations_nilpotent_operators: all_nilpotent,
    }
}
