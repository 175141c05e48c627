use num_traits::{One, Zero};

use super::matrix::DenseMatrix;
use super::scalar::Scalar;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Reduced row-echelon form by Gauss-Jordan elimination. The pivot in each
/// column is the first nonzero entry at or below the current row.
pub fn rref(m: &DenseMatrix) -> (DenseMatrix, Vec<usize>) {
    let mut rows = m.row_vectors();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut().skip(c) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            axpy(row, &f, &pivot_row, c);
        }
        pivots.push(c);
        r += 1;
    }
    let out = if rows.is_empty() {
        DenseMatrix::zeros(m.rows(), m.cols())
    } else {
        DenseMatrix::from_rows(&rows).expect("row lengths preserved")
    };
    (out, pivots)
}

/// `{v : M v = 0}` as a canonical subspace of K^cols.
pub fn nullspace(m: &DenseMatrix) -> Subspace {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let basis: Vec<Vec<Scalar>> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); n];
            v[f] = Scalar::one();
            for (k, &p) in pivots.iter().enumerate() {
                let x = &r[(k, f)];
                if !x.is_zero() {
                    v[p] = -x;
                }
            }
            v
        })
        .collect();
    Subspace::span(n, &basis).expect("nullspace vectors have ambient length")
}

/// `row -= f * pivot_row`, touching columns from `start` onwards.
fn axpy(row: &mut [Scalar], f: &Scalar, pivot_row: &[Scalar], start: usize) {
    for (x, p) in row.iter_mut().zip(pivot_row).skip(start) {
        if !p.is_zero() {
            *x -= f * p;
        }
    }
}

/// Incrementally maintained reduced row-echelon basis.
///
/// Rows are kept sorted by pivot column with every pivot normalized to one
/// and cleared from all other rows, so the state after any sequence of
/// insertions is the unique RREF of the span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `v` minus its projection along the pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(v)?;
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            axpy(&mut out, &f, row, p);
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }

    /// Coefficients of `v` in the row basis, or `None` when `v` lies outside the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    /// Adds `v` to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<bool> {
        let mut r = self.reduce(v)?;
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = r[p].recip();
        for x in r.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let f = row[p].clone();
                axpy(row, &f, &r, p);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        Ok(true)
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace::from_echelon_parts(self.ambient, self.rows, self.pivots)
    }
}
