use num_traits::Zero;

use super::matrix_algebra::{mat_bracket, MatrixLieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Scalar, Subspace};

type SparseVec = Vec<(usize, Scalar)>;

/// Structure constants `c_{ij}^k` of an `n`-dimensional Lie algebra.
///
/// Only pairs `i < j` are stored, each as a sparse vector over `k`; the rest
/// follows from antisymmetry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTensor {
    dim: usize,
    brackets: Vec<SparseVec>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.clone()))
        .collect()
}

fn add_scaled(acc: &mut [Scalar], f: &Scalar, v: &SparseVec) {
    for (k, x) in v {
        acc[*k] += f * x;
    }
}

impl StructureTensor {
    /// Abelian tensor of dimension `n`.
    pub fn zero(n: usize) -> Self {
        Self {
            dim: n,
            brackets: vec![Vec::new(); n * n.saturating_sub(1) / 2],
        }
    }

    /// Builds a tensor from `[e_i, e_j]` for every `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Result<Vec<Scalar>>) -> Result<Self> {
        let mut t = Self::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j)?;
                t.set_bracket(i, j, &v)?;
            }
        }
        Ok(t)
    }

    /// Sets `[e_i, e_j] = v` (and implicitly `[e_j, e_i] = -v`).
    pub fn set_bracket(&mut self, i: usize, j: usize, v: &[Scalar]) -> Result<()> {
        let n = self.dim;
        if v.len() != n || i >= n || j >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len().max(i + 1).max(j + 1),
            });
        }
        if i == j {
            return if v.iter().all(Zero::is_zero) {
                Ok(())
            } else {
                Err(Error::InvariantViolation("[e_i, e_i] must vanish".into()))
            };
        }
        if i < j {
            self.brackets[pair_index(n, i, j)] = to_sparse(v);
        } else {
            let neg: Vec<Scalar> = v.iter().map(|x| -x).collect();
            self.brackets[pair_index(n, j, i)] = to_sparse(&neg);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(Vec::is_empty)
    }

    /// `c_{ij}^k`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        let (a, b, sign) = match i.cmp(&j) {
            std::cmp::Ordering::Equal => return Scalar::zero(),
            std::cmp::Ordering::Less => (i, j, false),
            std::cmp::Ordering::Greater => (j, i, true),
        };
        let v = &self.brackets[pair_index(self.dim, a, b)];
        match v.binary_search_by_key(&k, |(c, _)| *c) {
            Ok(pos) if sign => -&v[pos].1,
            Ok(pos) => v[pos].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    /// `[e_i, e_j]` as a sparse vector together with the antisymmetry sign.
    fn basis_bracket(&self, i: usize, j: usize) -> Option<(&SparseVec, bool)> {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => Some((&self.brackets[pair_index(self.dim, i, j)], false)),
            std::cmp::Ordering::Greater => {
                Some((&self.brackets[pair_index(self.dim, j, i)], true))
            }
        }
    }

    /// `[e_i, e_j]` as a dense coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        if let Some((v, neg)) = self.basis_bracket(i, j) {
            for (k, x) in v {
                out[*k] = if neg { -x } else { x.clone() };
            }
        }
        out
    }

    fn check_vec(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `[e_i, y]`.
    pub fn ad_basis(&self, i: usize, y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_vec(y)?;
        let mut out = vec![Scalar::zero(); self.dim];
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            if let Some((v, neg)) = self.basis_bracket(i, j) {
                if neg {
                    add_scaled(&mut out, &-yj, v);
                } else {
                    add_scaled(&mut out, yj, v);
                }
            }
        }
        Ok(out)
    }

    /// `[x, y]` for arbitrary coordinate vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        let mut out = vec![Scalar::zero(); self.dim];
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = &self.brackets[pair_index(self.dim, i, j)];
                if v.is_empty() {
                    continue;
                }
                let f = &x[i] * &y[j] - &x[j] * &y[i];
                if !f.is_zero() {
                    add_scaled(&mut out, &f, v);
                }
            }
        }
        Ok(out)
    }
}

/// Structure constants of `L` in its echelon basis. Coordinates of a member
/// are read off the pivot columns; every bracket is re-verified against the
/// coordinate subspace.
pub fn structure_tensor(l: &MatrixLieAlgebra) -> Result<StructureTensor> {
    let basis = l.basis();
    StructureTensor::from_fn(l.dim(), |i, j| {
        let z = mat_bracket(&basis[i], &basis[j])?;
        l.coords().coordinates(&z.flatten_upper())?.ok_or_else(|| {
            Error::InvariantViolation(format!("bracket of basis elements {i},{j} left the algebra"))
        })
    })
}

/// Jacobi identity on every basis triple `i < j < k`.
pub fn jacobi_check(t: &StructureTensor) -> bool {
    let n = t.dim();
    let mut acc = vec![Scalar::zero(); n];
    // [[e_a, e_b], e_c] = sum_s c_ab^s [e_s, e_c]
    let double = |acc: &mut Vec<Scalar>, a: usize, b: usize, c: usize| {
        if let Some((v, neg)) = t.basis_bracket(a, b) {
            for (s, x) in v {
                if let Some((w, neg2)) = t.basis_bracket(*s, c) {
                    let f = if neg ^ neg2 { -x } else { x.clone() };
                    add_scaled(acc, &f, w);
                }
            }
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                acc.iter_mut().for_each(|x| x.set_zero());
                double(&mut acc, i, j, k);
                double(&mut acc, j, k, i);
                double(&mut acc, k, i, j);
                if acc.iter().any(|x| !x.is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

/// Induced tensor on a bracket-closed subspace `S`, in the echelon basis of `S`.
pub fn restrict_to_subalgebra(t: &StructureTensor, s: &Subspace) -> Result<StructureTensor> {
    if s.ambient_dim() != t.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.dim(),
            found: s.ambient_dim(),
        });
    }
    let basis = s.basis();
    StructureTensor::from_fn(s.dim(), |a, b| {
        let z = t.bracket(&basis[a], &basis[b])?;
        s.coordinates(&z)?.ok_or(Error::NotASubalgebra)
    })
}
