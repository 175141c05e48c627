use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::Scalar;
use super::subspace::Subspace;
use crate::error::{Error, Result};

type SparseRow = Vec<(usize, BigInt)>;

/// Homogeneous linear system over Q, solved exactly.
///
/// Equations are cleared of denominators and stored as primitive sparse
/// integer rows. Solving runs in three stages:
///
/// 1. A word-size echelon form modulo the prime `2^61 - 1` picks out a
///    subset of equations that are independent mod p, hence over Q.
/// 2. Those rows go through fraction-free integer elimination (reduced on
///    the leading column only) and the kernel is recovered by rational back
///    substitution.
/// 3. The kernel of the subset contains the true kernel; it is accepted only
///    after every equation is checked to vanish on it exactly. Equations
///    that fail join the exact subset and the solve repeats.
#[derive(Debug, Clone)]
pub struct IntegerSystem {
    cols: usize,
    equations: Vec<SparseRow>,
}

/// Kernel and rank of an [`IntegerSystem`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub nullspace: Subspace,
    pub rank: usize,
}

impl IntegerSystem {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            equations: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn equations(&self) -> usize {
        self.equations.len()
    }

    /// Adds the equation `sum coeff * x[col] = 0`. Repeated columns are summed;
    /// an equation that cancels entirely is dropped.
    pub fn add_equation(&mut self, terms: &[(usize, Scalar)]) -> Result<()> {
        if let Some(&(bad, _)) = terms.iter().find(|(c, _)| *c >= self.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: bad + 1,
            });
        }
        let mut terms: Vec<(usize, Scalar)> = terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .cloned()
            .collect();
        terms.sort_by_key(|(c, _)| *c);
        let mut merged: Vec<(usize, Scalar)> = Vec::with_capacity(terms.len());
        for (c, x) in terms {
            match merged.last_mut() {
                Some((lc, lx)) if *lc == c => *lx += x,
                _ => merged.push((c, x)),
            }
        }
        merged.retain(|(_, x)| !x.is_zero());
        if merged.is_empty() {
            return Ok(());
        }
        let lcm = merged
            .iter()
            .fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
        let mut row: SparseRow = merged
            .into_iter()
            .map(|(c, x)| (c, x.numer() * (&lcm / x.denom())))
            .collect();
        normalize(&mut row);
        self.equations.push(row);
        Ok(())
    }

    pub fn nullspace(&self) -> Subspace {
        self.solve().nullspace
    }

    pub fn solve(&self) -> Solution {
        let mut first = ModularEchelon::new(self.cols, FIRST_PRIME);
        let mut selected = first.select(&self.equations);
        'reselect: loop {
            let rows = selected.clone();
            let mut images = primes().map(move |p| {
                let mut e = ModularEchelon::new(self.cols, p);
                for &i in &rows {
                    let mut v = e.load(&self.equations[i]);
                    e.insert(&mut v);
                }
                (p, e)
            });
            let (p0, e0) = images.next().expect("primes below 2^31 exist");
            let pivots = e0.pivots.clone();
            let mut crt = CrtKernel::new(&e0.kernel(), p0);
            for (p, e) in images.take(MAX_PRIMES) {
                if e.pivots != pivots {
                    continue;
                }
                let modular = e.kernel();
                crt.absorb(&modular, p);
                let Some(candidate) = crt.reconstruct() else {
                    continue;
                };
                let failing: Vec<usize> = (0..self.equations.len())
                    .filter(|&i| !annihilates(&self.equations[i], &candidate))
                    .collect();
                if failing.is_empty() {
                    return self.solution(selected.len(), &candidate);
                }
                // A failing row that is also nonzero on the modular kernel was
                // missed by the selection; otherwise more primes are needed.
                let missed: Vec<usize> = failing
                    .into_iter()
                    .filter(|&i| {
                        let row = e.load(&self.equations[i]);
                        modular.iter().any(|k| {
                            row.iter().zip(k).fold(0u64, |acc, (a, b)| (acc + a * b) % p) != 0
                        })
                    })
                    .collect();
                if !missed.is_empty() {
                    selected.extend(missed);
                    selected.sort_unstable();
                    continue 'reselect;
                }
            }
            break;
        }
        let exact = ExactEchelon::from_rows(self.cols, self.equations.iter());
        self.solution(exact.rank(), &exact.kernel())
    }

    fn solution(&self, rank: usize, kernel: &[IntegerVector]) -> Solution {
        let basis: Vec<Vec<Scalar>> = kernel.iter().map(IntegerVector::to_rational).collect();
        Solution {
            rank,
            nullspace: Subspace::span(self.cols, &basis).expect("kernel vectors have system width"),
        }
    }

    /// Kernel by exact elimination of every equation, without the modular
    /// pre-selection.
    pub fn nullspace_exact(&self) -> Subspace {
        let exact = ExactEchelon::from_rows(self.cols, self.equations.iter());
        let kernel = exact.kernel();
        Subspace::span(self.cols, &kernel.iter().map(|v| v.to_rational()).collect::<Vec<_>>())
            .expect("kernel vectors have system width")
    }
}

/// Kernel vector with a common denominator: `numer / denom`.
#[derive(Debug, Clone)]
struct IntegerVector {
    numer: Vec<BigInt>,
}

impl IntegerVector {
    fn to_rational(&self) -> Vec<Scalar> {
        self.numer.iter().map(|x| Scalar::from_integer(x.clone())).collect()
    }
}

fn annihilates(row: &SparseRow, kernel: &[IntegerVector]) -> bool {
    kernel.iter().all(|v| {
        let mut acc = BigInt::zero();
        for (c, a) in row {
            let x = &v.numer[*c];
            if !x.is_zero() {
                acc += a * x;
            }
        }
        acc.is_zero()
    })
}

/// Largest prime below `2^31`; the first modulus tried.
const FIRST_PRIME: u64 = 2_147_483_647;

/// Primes tried before giving up on reconstruction and eliminating exactly.
const MAX_PRIMES: usize = 64;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // Deterministic for n < 3_215_031_751.
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Primes below `2^31` in decreasing order.
fn primes() -> impl Iterator<Item = u64> {
    (2..=FIRST_PRIME).rev().filter(|&n| is_prime(n))
}

fn to_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.iter_u64_digits().next().unwrap_or(0)
}

/// Dense reduced row-echelon form over `Z / p` for a prime `p < 2^32`.
struct ModularEchelon {
    p: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl ModularEchelon {
    fn new(cols: usize, p: u64) -> Self {
        Self {
            p,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn load(&self, eq: &SparseRow) -> Vec<u64> {
        let mut v = vec![0u64; self.cols];
        for (c, a) in eq {
            v[*c] = to_mod(a, self.p);
        }
        v
    }

    /// Indices of a maximal subset of `equations` independent mod p, chosen greedily.
    fn select(&mut self, equations: &[SparseRow]) -> Vec<usize> {
        let mut chosen = Vec::new();
        for (i, eq) in equations.iter().enumerate() {
            if self.rows.len() == self.cols {
                break;
            }
            let mut v = self.load(eq);
            if self.insert(&mut v) {
                chosen.push(i);
            }
        }
        chosen
    }

    fn insert(&mut self, v: &mut [u64]) -> bool {
        let p = self.p;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f == 0 {
                continue;
            }
            let neg = p - f;
            for (x, r) in v.iter_mut().zip(row).skip(c) {
                if *r != 0 {
                    *x = (*x + neg * r) % p;
                }
            }
        }
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = pow_mod(v[c], p - 2, p);
        for x in v.iter_mut().skip(c) {
            *x = *x * inv % p;
        }
        for row in &mut self.rows {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let neg = p - f;
            for (x, r) in row.iter_mut().zip(v.iter()).skip(c) {
                if *r != 0 {
                    *x = (*x + neg * r) % p;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(at, c);
        self.rows.insert(at, v.to_vec());
        true
    }

    /// Kernel basis with an identity block on the free columns.
    fn kernel(&self) -> Vec<Vec<u64>> {
        let mut is_pivot = vec![false; self.cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (row, &c) in self.rows.iter().zip(&self.pivots) {
                    v[c] = (self.p - row[f]) % self.p;
                }
                v
            })
            .collect()
    }
}

/// Residues of a kernel basis combined across primes by CRT.
struct CrtKernel {
    modulus: BigInt,
    residues: Vec<Vec<BigInt>>,
}

impl CrtKernel {
    fn new(first: &[Vec<u64>], p: u64) -> Self {
        Self {
            modulus: BigInt::from(p),
            residues: first
                .iter()
                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        }
    }

    fn absorb(&mut self, image: &[Vec<u64>], p: u64) {
        let pb = BigInt::from(p);
        let m_mod_p = to_mod(&self.modulus, p);
        let inv = pow_mod(m_mod_p, p - 2, p);
        for (acc, img) in self.residues.iter_mut().zip(image) {
            for (r, &x) in acc.iter_mut().zip(img) {
                let r_mod_p = to_mod(r, p);
                let t = ((x + p - r_mod_p) % p) * inv % p;
                if t != 0 {
                    *r += &self.modulus * BigInt::from(t);
                }
            }
        }
        self.modulus *= pb;
    }

    /// Rational lift of every residue, scaled to a primitive integer vector.
    fn reconstruct(&self) -> Option<Vec<IntegerVector>> {
        let bound = (&self.modulus >> 1u32).sqrt();
        self.residues
            .iter()
            .map(|res| {
                let lifted: Vec<(BigInt, BigInt)> = res
                    .iter()
                    .map(|r| rational_reconstruct(r, &self.modulus, &bound))
                    .collect::<Option<_>>()?;
                let lcm = lifted.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
                let numer = lifted.iter().map(|(n, d)| n * (&lcm / d)).collect();
                Some(IntegerVector { numer })
            })
            .collect()
    }
}

/// The fraction `n / d` with `|n|, d <= bound` and `n = d * r mod m`, if one exists.
fn rational_reconstruct(r: &BigInt, m: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    if r.is_zero() {
        return Some((BigInt::zero(), BigInt::one()));
    }
    let (mut r0, mut r1) = (m.clone(), r.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Fraction-free row-echelon form on sparse integer rows.
struct ExactEchelon {
    cols: usize,
    rows: Vec<SparseRow>,
    pivot_of: Vec<Option<usize>>,
}

impl ExactEchelon {
    fn from_rows<'a>(cols: usize, rows: impl Iterator<Item = &'a SparseRow>) -> Self {
        let mut e = Self {
            cols,
            rows: Vec::new(),
            pivot_of: vec![None; cols],
        };
        for r in rows {
            e.insert_row(r.clone());
        }
        e
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` on its leading column until that column is free, then stores it.
    fn insert_row(&mut self, mut row: SparseRow) -> bool {
        let mut base_bits = max_bits(&row);
        while let Some(&(lead, _)) = row.first() {
            let Some(k) = self.pivot_of[lead] else { break };
            row = eliminate(&row, &self.rows[k]);
            let bits = max_bits(&row);
            if bits > base_bits + CONTENT_SLACK_BITS {
                normalize(&mut row);
                base_bits = max_bits(&row);
            }
        }
        if row.is_empty() {
            return false;
        }
        normalize(&mut row);
        self.pivot_of[row[0].0] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    /// One integer kernel vector per free column.
    fn kernel(&self) -> Vec<IntegerVector> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| std::cmp::Reverse(self.rows[k][0].0));
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| self.pivot_of[c].is_none()) {
            let mut x = vec![Scalar::zero(); self.cols];
            x[free] = Scalar::one();
            for &k in &order {
                let row = &self.rows[k];
                let (p, lead) = &row[0];
                if *p > free {
                    continue;
                }
                let mut acc = Scalar::zero();
                for (c, a) in &row[1..] {
                    if !x[*c].is_zero() {
                        acc += &x[*c] * Scalar::from_integer(a.clone());
                    }
                }
                x[*p] = -acc / Scalar::from_integer(lead.clone());
            }
            let lcm = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let numer = x
                .iter()
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect();
            out.push(IntegerVector { numer });
        }
        out
    }
}


/// Growth tolerated before the row content is divided out again.
const CONTENT_SLACK_BITS: u64 = 64;

fn max_bits(row: &SparseRow) -> u64 {
    row.iter().map(|(_, x)| x.bits()).max().unwrap_or(0)
}

/// Cancels the leading entry of `row` against `pivot`, which share a leading column.
fn eliminate(row: &SparseRow, pivot: &SparseRow) -> SparseRow {
    let a = &pivot[0].1;
    let b = &row[0].1;
    let g = a.gcd(b);
    let ka = a / &g;
    let kb = b / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, val) = if ci < cj {
            i += 1;
            (ci, &ka * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(&kb * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, &ka * &row[i - 1].1 - &kb * &pivot[j - 1].1)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

/// Divides by the content and makes the leading entry positive.
fn normalize(row: &mut SparseRow) {
    let Some(first) = row.first() else { return };
    let mut g = BigInt::zero();
    for (_, x) in row.iter() {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    if first.1.sign() == Sign::Minus {
        g = -g;
    }
    if !g.is_one() {
        for (_, x) in row.iter_mut() {
            *x /= &g;
        }
    }
    debug_assert!(row[0].1.is_positive());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{nullspace, scalar_from_i64, DenseMatrix};
    use proptest::prelude::*;

    #[test]
    fn single_equation() {
        let mut sys = IntegerSystem::new(2);
        sys.add_equation(&[(0, scalar_from_i64(1)), (1, scalar_from_i64(2))])
            .unwrap();
        assert_eq!(sys.solve().rank, 1);
        let ns = sys.nullspace();
        assert_eq!(ns.dim(), 1);
        assert!(ns.contains(&[scalar_from_i64(-2), scalar_from_i64(1)]).unwrap());
    }

    #[test]
    fn repeated_columns_are_summed() {
        let mut sys = IntegerSystem::new(2);
        sys.add_equation(&[(0, scalar_from_i64(1)), (0, scalar_from_i64(-1))])
            .unwrap();
        assert_eq!(sys.equations(), 0);
        assert_eq!(sys.nullspace().dim(), 2);
    }

    #[test]
    fn modular_collision_is_caught_by_certificate() {
        // x0 + p*x1 = 0 and x0 = 0 are dependent mod p but independent over Q.
        let p = Scalar::from_integer(BigInt::from(FIRST_PRIME));
        let mut sys = IntegerSystem::new(2);
        sys.add_equation(&[(0, scalar_from_i64(1))]).unwrap();
        sys.add_equation(&[(0, scalar_from_i64(1)), (1, p)]).unwrap();
        let sol = sys.solve();
        assert_eq!(sol.rank, 2);
        assert_eq!(sol.nullspace.dim(), 0);
    }

    #[test]
    fn out_of_range_column() {
        let mut sys = IntegerSystem::new(2);
        assert!(sys.add_equation(&[(2, scalar_from_i64(1))]).is_err());
    }

    proptest! {
        #[test]
        fn agrees_with_dense_kernel(
            (r, c, entries) in (1usize..8, 1usize..8).prop_flat_map(|(r, c)| {
                (Just(r), Just(c), proptest::collection::vec((-5i64..=5, 1i64..4), r * c))
            })
        ) {
            let scalars: Vec<Scalar> = entries
                .iter()
                .map(|&(n, d)| Scalar::new(BigInt::from(n), BigInt::from(d)))
                .collect();
            let m = DenseMatrix::from_entries(r, c, scalars).unwrap();
            let mut sys = IntegerSystem::new(c);
            for i in 0..r {
                let terms: Vec<(usize, Scalar)> =
                    m.row(i).iter().cloned().enumerate().collect();
                sys.add_equation(&terms).unwrap();
            }
            let dense = nullspace(&m);
            prop_assert_eq!(&sys.nullspace_exact(), &dense);
            prop_assert_eq!(sys.nullspace(), dense);
        }
    }
}
