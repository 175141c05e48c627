use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::tensor::StructureTensor;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, IntegerSystem, Scalar, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    LowerCentral,
    UpperCentral,
    Derived,
}

/// Terms of a central or derived series, ending at the first fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub dims: Vec<usize>,
    pub terminated: bool,
}

impl SeriesReport {
    fn new(kind: SeriesKind, terms: Vec<Subspace>) -> Self {
        let dims = terms.iter().map(Subspace::dim).collect();
        Self {
            kind,
            terms,
            dims,
            terminated: true,
        }
    }

    /// Last term (the fixed point).
    pub fn limit(&self) -> &Subspace {
        self.terms.last().expect("a series has at least one term")
    }
}

/// Iterates `next` from `start` until a term repeats.
fn iterate(
    kind: SeriesKind,
    start: Subspace,
    mut next: impl FnMut(&Subspace) -> Result<Subspace>,
) -> Result<SeriesReport> {
    let mut terms = vec![start];
    loop {
        let current = terms.last().expect("nonempty");
        let following = next(current)?;
        if &following == current {
            return Ok(SeriesReport::new(kind, terms));
        }
        terms.push(following);
    }
}

/// `C^1 = L`, `C^{k+1} = [L, C^k]`.
pub fn lower_central_series(t: &StructureTensor) -> SeriesReport {
    let n = t.dim();
    iterate(SeriesKind::LowerCentral, Subspace::full(n), |c| {
        let mut e = Echelon::new(n);
        for y in c.basis() {
            for i in 0..n {
                e.insert(&t.ad_basis(i, y)?)?;
            }
        }
        Ok(e.into_subspace())
    })
    .expect("vectors produced by the tensor have its dimension")
}

/// `D^0 = L`, `D^{k+1} = [D^k, D^k]`.
pub fn derived_series(t: &StructureTensor) -> SeriesReport {
    let n = t.dim();
    iterate(SeriesKind::Derived, Subspace::full(n), |d| {
        let mut e = Echelon::new(n);
        let b = d.basis();
        for (a, x) in b.iter().enumerate() {
            for y in &b[a + 1..] {
                e.insert(&t.bracket(x, y)?)?;
            }
        }
        Ok(e.into_subspace())
    })
    .expect("vectors produced by the tensor have its dimension")
}

/// `{x : [x, e_j] ∈ Z for all j}`, the preimage of the center of `L/Z`.
///
/// Each `[e_a, e_j]` is reduced modulo `Z`; the surviving non-pivot
/// coordinates give one linear equation in `x` per pair `(j, column)`.
fn central_preimage(t: &StructureTensor, z: &Subspace) -> Result<Subspace> {
    let n = t.dim();
    let mut is_pivot = vec![false; n];
    for &p in z.pivot_cols() {
        is_pivot[p] = true;
    }
    // reduced[a][j] = ([e_a, e_j] mod Z)
    let mut reduced: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(n);
    for a in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(z.reduce(&t.bracket_basis(a, j))?);
        }
        reduced.push(row);
    }
    let mut sys = IntegerSystem::new(n);
    for j in 0..n {
        for q in (0..n).filter(|&q| !is_pivot[q]) {
            let terms: Vec<(usize, Scalar)> = (0..n)
                .filter(|&a| !reduced[a][j][q].is_zero())
                .map(|a| (a, reduced[a][j][q].clone()))
                .collect();
            sys.add_equation(&terms)?;
        }
    }
    Ok(sys.nullspace())
}

/// `Z_0 = 0`, `Z_{i+1} = {x : [x, L] ⊆ Z_i}`.
pub fn upper_central_series(t: &StructureTensor) -> SeriesReport {
    iterate(SeriesKind::UpperCentral, Subspace::zero(t.dim()), |z| {
        central_preimage(t, z)
    })
    .expect("vectors produced by the tensor have its dimension")
}

pub fn center(t: &StructureTensor) -> Subspace {
    central_preimage(t, &Subspace::zero(t.dim())).expect("dimensions agree")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nilpotency {
    pub is_nilpotent: bool,
    /// Number of nonzero lower-central terms, when nilpotent.
    pub class: Option<usize>,
}

pub fn nilpotency(t: &StructureTensor) -> Nilpotency {
    nilpotency_of(&lower_central_series(t))
}

pub(crate) fn nilpotency_of(lower: &SeriesReport) -> Nilpotency {
    let is_nilpotent = lower.limit().dim() == 0;
    Nilpotency {
        is_nilpotent,
        class: is_nilpotent.then(|| lower.dims.iter().filter(|&&d| d > 0).count()),
    }
}

/// Minimal number of generators, `dim L - dim [L, L]`, for nilpotent `L`.
pub fn generators_count(t: &StructureTensor) -> Result<usize> {
    let lower = lower_central_series(t);
    if lower.limit().dim() != 0 {
        return Err(Error::Domain(
            "generator count formula needs a nilpotent algebra".into(),
        ));
    }
    let commutant = lower.terms.get(1).map_or(0, Subspace::dim);
    Ok(t.dim() - commutant)
}

/// `[e_i, s] ∈ S` for every basis vector `e_i` and every `s ∈ S`.
pub fn is_ideal(t: &StructureTensor, s: &Subspace) -> Result<bool> {
    if s.ambient_dim() != t.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.dim(),
            found: s.ambient_dim(),
        });
    }
    for y in s.basis() {
        for i in 0..t.dim() {
            if !s.contains(&t.ad_basis(i, y)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{full_upper_nilpotent, structure_tensor};
    use crate::linalg::scalar_from_i64;
    use num_traits::One;

    fn e(n: usize, k: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n];
        v[k] = Scalar::one();
        v
    }

    fn heisenberg() -> StructureTensor {
        let mut t = StructureTensor::zero(3);
        t.set_bracket(0, 1, &e(3, 2)).unwrap();
        t
    }

    /// gl_2 in the basis E11, E12, E21, E22.
    fn gl2() -> StructureTensor {
        let mut t = StructureTensor::zero(4);
        let v = |xs: [i64; 4]| xs.map(scalar_from_i64).to_vec();
        t.set_bracket(0, 1, &v([0, 1, 0, 0])).unwrap();
        t.set_bracket(0, 2, &v([0, 0, -1, 0])).unwrap();
        t.set_bracket(1, 2, &v([1, 0, 0, -1])).unwrap();
        t.set_bracket(1, 3, &v([0, 1, 0, 0])).unwrap();
        t.set_bracket(2, 3, &v([0, 0, -1, 0])).unwrap();
        t
    }

    #[test]
    fn abelian_series() {
        let t = StructureTensor::zero(3);
        assert_eq!(lower_central_series(&t).dims, vec![3, 0]);
        assert_eq!(upper_central_series(&t).dims, vec![0, 3]);
        assert_eq!(derived_series(&t).dims, vec![3, 0]);
        assert_eq!(center(&StructureTensor::zero(2)).dim(), 2);
        assert_eq!(
            nilpotency(&StructureTensor::zero(1)),
            Nilpotency { is_nilpotent: true, class: Some(1) }
        );
        assert_eq!(generators_count(&t).unwrap(), 3);
    }

    #[test]
    fn empty_algebra() {
        let t = StructureTensor::zero(0);
        assert_eq!(lower_central_series(&t).dims, vec![0]);
        assert_eq!(nilpotency(&t), Nilpotency { is_nilpotent: true, class: Some(0) });
    }

    #[test]
    fn heisenberg_series() {
        let t = heisenberg();
        assert_eq!(lower_central_series(&t).dims, vec![3, 1, 0]);
        assert_eq!(upper_central_series(&t).dims, vec![0, 1, 3]);
        assert_eq!(center(&t), Subspace::span(3, &[e(3, 2)]).unwrap());
        assert_eq!(generators_count(&t).unwrap(), 2);
    }

    #[test]
    fn gl2_is_not_nilpotent() {
        let t = gl2();
        let lower = lower_central_series(&t);
        assert_eq!(lower.dims, vec![4, 3]);
        assert_eq!(nilpotency(&t), Nilpotency { is_nilpotent: false, class: None });
        assert!(matches!(generators_count(&t), Err(Error::Domain(_))));
        assert_eq!(center(&t).dim(), 1);
        assert_eq!(derived_series(&t).dims, vec![4, 3]);
    }

    #[test]
    fn full_upper_algebras() {
        for m in 2..=6 {
            let t = structure_tensor(&full_upper_nilpotent(m).unwrap()).unwrap();
            let nil = nilpotency(&t);
            assert_eq!(nil.class, Some(m - 1), "m = {m}");
            assert_eq!(center(&t).dim(), 1);
            let lower = lower_central_series(&t);
            let mut upper = upper_central_series(&t).dims;
            upper.reverse();
            assert_eq!(lower.dims, upper);
        }
    }

    #[test]
    fn ideals() {
        let t = heisenberg();
        assert!(is_ideal(&t, &Subspace::span(3, &[e(3, 0), e(3, 2)]).unwrap()).unwrap());
        assert!(!is_ideal(&t, &Subspace::span(3, &[e(3, 0)]).unwrap()).unwrap());
    }
}
