use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::analysis::expected_dimension;
use super::rng::SplitMix64;
use crate::error::{Error, Result};
use crate::lie::{
    center, derivation_algebra, derived_series, generate_subalgebra, is_ideal, jordan_block,
    lower_central_series, nilpotency, restrict_to_subalgebra, structure_tensor,
    upper_central_series, StructureTensor,
};
use crate::linalg::{scalar_from_i64, DenseMatrix, Scalar, Subspace};
use crate::report::{matrix_json, opt_matrix_json};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub m: usize,
    pub gens: u8,
    pub seed: u64,
    pub bound: u32,
    pub generic: bool,
}

impl ExperimentConfig {
    /// Two generators, entries in `[-10, 10]`, generic resampling on.
    pub fn new(m: usize, seed: u64) -> Self {
        Self {
            m,
            gens: 2,
            seed,
            bound: 10,
            generic: true,
        }
    }

    pub fn with_gens(mut self, gens: u8) -> Self {
        self.gens = gens;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=12).contains(&self.m) {
            return Err(Error::InvalidConfig(format!("m must be in 2..=12, got {}", self.m)));
        }
        if !matches!(self.gens, 2 | 3) {
            return Err(Error::InvalidConfig(format!("gens must be 2 or 3, got {}", self.gens)));
        }
        if self.bound == 0 {
            return Err(Error::InvalidConfig("bound must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generators {
    #[serde(rename = "X", with = "matrix_json")]
    pub x: DenseMatrix,
    #[serde(rename = "Y", with = "matrix_json")]
    pub y: DenseMatrix,
    #[serde(
        rename = "Z",
        with = "opt_matrix_json",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub z: Option<DenseMatrix>,
}

impl Generators {
    pub fn to_vec(&self) -> Vec<DenseMatrix> {
        let mut out = vec![self.x.clone(), self.y.clone()];
        out.extend(self.z.clone());
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerSummary {
    pub dim: usize,
    pub nilpotent: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutantSummary {
    pub dim: usize,
    pub der_dim: usize,
    pub der_nilpotent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSummary {
    pub coefficients: Vec<i64>,
    pub der_dim: usize,
    pub der_nilpotent: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaCheck {
    pub expected: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentResults {
    pub dim: usize,
    pub class: usize,
    pub lower_dims: Vec<usize>,
    pub upper_dims: Vec<usize>,
    pub derived_dims: Vec<usize>,
    pub center_dim: usize,
    pub generators_count: usize,
    pub der: DerSummary,
    pub commutant: CommutantSummary,
    pub codim1_ideal: IdealSummary,
    pub formula: FormulaCheck,
}

impl ExperimentResults {
    /// Every dimension and verdict in a fixed order; independent of the
    /// random matrices and functional.
    pub fn fingerprint(&self) -> String {
        let list = |v: &[usize]| {
            v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        };
        let nil = |b: bool| if b { "nil" } else { "non" };
        format!(
            "dim={};class={};lower={};upper={};derived={};center={};gens={};der={}:{};commutant={}:{}:{};ideal={}:{}",
            self.dim,
            self.class,
            list(&self.lower_dims),
            list(&self.upper_dims),
            list(&self.derived_dims),
            self.center_dim,
            self.generators_count,
            self.der.dim,
            nil(self.der.nilpotent),
            self.commutant.dim,
            self.commutant.der_dim,
            nil(self.commutant.der_nilpotent),
            self.codim1_ideal.der_dim,
            nil(self.codim1_ideal.der_nilpotent),
        )
    }
}

/// Full record of one seeded experiment, laid out as the structured report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub config: ExperimentConfig,
    pub generators: Generators,
    pub results: ExperimentResults,
    pub fingerprint: String,
}

/// Random strictly upper-triangular integer matrix, entries drawn row by row.
///
/// With `require_generic` the whole matrix is redrawn until every
/// superdiagonal entry is nonzero, which is equivalent to `Y^{m-1} ≠ 0`.
pub fn random_generic_upper(
    m: usize,
    rng: &mut SplitMix64,
    bound: u32,
    require_generic: bool,
) -> DenseMatrix {
    loop {
        let mut y = DenseMatrix::zeros(m, m);
        for i in 0..m {
            for j in i + 1..m {
                y[(i, j)] = scalar_from_i64(rng.rand_int(bound));
            }
        }
        if !require_generic || (0..m.saturating_sub(1)).all(|i| !y[(i, i + 1)].is_zero()) {
            return y;
        }
    }
}

/// Kernel of a random nonzero functional on `L/[L, L]`, a codimension-one ideal.
///
/// The functional's coefficients act on the non-pivot coordinates of the
/// commutant, i.e. on the quotient coordinates.
pub fn codim1_random_ideal(
    t: &StructureTensor,
    rng: &mut SplitMix64,
    bound: u32,
) -> Result<(Subspace, Vec<i64>)> {
    let n = t.dim();
    let lower = lower_central_series(t);
    if lower.limit().dim() != 0 {
        return Err(Error::Domain("codimension-one ideals need a nilpotent algebra".into()));
    }
    let commutant = lower.terms.get(1).cloned().unwrap_or_else(|| Subspace::zero(n));
    let quotient_cols: Vec<usize> = {
        let mut is_pivot = vec![false; n];
        for &p in commutant.pivot_cols() {
            is_pivot[p] = true;
        }
        (0..n).filter(|&q| !is_pivot[q]).collect()
    };
    if n == 0 || quotient_cols.is_empty() {
        return Err(Error::Domain("algebra has no generators".into()));
    }
    let coefficients = loop {
        let c: Vec<i64> = quotient_cols.iter().map(|_| rng.rand_int(bound)).collect();
        if c.iter().any(|&x| x != 0) {
            break c;
        }
    };
    // f(e_a) = sum_q coeff_q * (e_a mod C^2)_q
    let mut row = vec![Scalar::zero(); n];
    for (a, slot) in row.iter_mut().enumerate() {
        let mut e = vec![Scalar::zero(); n];
        e[a] = scalar_from_i64(1);
        let r = commutant.reduce(&e)?;
        for (&q, &c) in quotient_cols.iter().zip(&coefficients) {
            if c != 0 && !r[q].is_zero() {
                *slot += scalar_from_i64(c) * &r[q];
            }
        }
    }
    let functional = DenseMatrix::from_rows(&[row])?;
    let ideal = crate::linalg::nullspace(&functional);
    if !commutant.is_subspace_of(&ideal)? || ideal.codim_in(&Subspace::full(n))? != 1 {
        return Err(Error::InvariantViolation("kernel is not a codimension-one ideal".into()));
    }
    if !is_ideal(t, &ideal)? {
        return Err(Error::InvariantViolation("kernel is not an ideal".into()));
    }
    Ok((ideal, coefficients))
}

fn der_summary(t: &StructureTensor) -> Result<DerSummary> {
    let der = derivation_algebra(t)?;
    Ok(DerSummary {
        dim: der.dim,
        nilpotent: nilpotency(&der.tensor).is_nilpotent,
    })
}

/// Runs the whole procedure for one configuration. The same configuration
/// always produces the same report.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let m = cfg.m;
    let mut rng = SplitMix64::new(cfg.seed);
    let x = jordan_block(m)?;
    let y = random_generic_upper(m, &mut rng, cfg.bound, cfg.generic);
    let z = (cfg.gens == 3).then(|| random_generic_upper(m, &mut rng, cfg.bound, cfg.generic));
    let generators = Generators { x, y, z };

    let algebra = generate_subalgebra(&generators.to_vec())?;
    let t = structure_tensor(&algebra)?;
    let n = t.dim();

    let lower = lower_central_series(&t);
    let upper = upper_central_series(&t);
    let derived = derived_series(&t);
    if lower.limit().dim() != 0 {
        return Err(Error::InvariantViolation(
            "subalgebra of strictly upper-triangular matrices is not nilpotent".into(),
        ));
    }
    let class = lower.dims.iter().filter(|&&d| d > 0).count();
    let commutant_space = lower.terms.get(1).cloned().unwrap_or_else(|| Subspace::zero(n));
    let generators_count = n - commutant_space.dim();

    let der = der_summary(&t)?;

    let commutant_tensor = restrict_to_subalgebra(&t, &commutant_space)?;
    let commutant_der = der_summary(&commutant_tensor)?;

    let (ideal, coefficients) = codim1_random_ideal(&t, &mut rng, cfg.bound)?;
    let ideal_der = der_summary(&restrict_to_subalgebra(&t, &ideal)?)?;

    let expected = expected_dimension(m);
    let results = ExperimentResults {
        dim: n,
        class,
        lower_dims: lower.dims.clone(),
        upper_dims: upper.dims.clone(),
        derived_dims: derived.dims.clone(),
        center_dim: center(&t).dim(),
        generators_count,
        der,
        commutant: CommutantSummary {
            dim: commutant_space.dim(),
            der_dim: commutant_der.dim,
            der_nilpotent: commutant_der.nilpotent,
        },
        codim1_ideal: IdealSummary {
            coefficients,
            der_dim: ideal_der.dim,
            der_nilpotent: ideal_der.nilpotent,
        },
        formula: FormulaCheck {
            expected,
            matches: expected == n,
        },
    };
    Ok(ExperimentReport {
        schema_version: SCHEMA_VERSION,
        config: *cfg,
        generators,
        fingerprint: results.fingerprint(),
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_sampling() {
        let mut rng = SplitMix64::new(3);
        for m in 2..=8 {
            let y = random_generic_upper(m, &mut rng, 10, true);
            assert!(y.is_strictly_upper());
            assert!(!y.pow(m as u32 - 1).unwrap().is_zero());
            assert!(y.pow(m as u32).unwrap().is_zero());
        }
        let y = random_generic_upper(2, &mut rng, 1, true);
        assert!(!y[(0, 1)].is_zero());
    }

    #[test]
    fn generic_acceptance_rate() {
        // a single draw is generic with probability (20/21)^(m-1)
        let m = 5;
        let p = (20.0f64 / 21.0).powi(m as i32 - 1);
        let mut rng = SplitMix64::new(11);
        let trials = 20_000;
        let mut generic = 0;
        for _ in 0..trials {
            let y = random_generic_upper(m, &mut rng, 10, false);
            if (0..m - 1).all(|i| !y[(i, i + 1)].is_zero()) {
                generic += 1;
            }
        }
        let rate = f64::from(generic) / f64::from(trials);
        let sd = (p * (1.0 - p) / f64::from(trials)).sqrt();
        assert!((rate - p).abs() < 5.0 * sd, "rate {rate} vs {p}");
    }

    #[test]
    fn config_validation() {
        assert!(ExperimentConfig::new(1, 0).validate().is_err());
        assert!(ExperimentConfig::new(13, 0).validate().is_err());
        assert!(ExperimentConfig::new(5, 0).with_gens(4).validate().is_err());
        let mut c = ExperimentConfig::new(5, 0);
        c.bound = 0;
        assert!(c.validate().is_err());
        assert!(ExperimentConfig::new(12, 0).validate().is_ok());
    }

    #[test]
    fn small_orders() {
        let r = run_experiment(&ExperimentConfig::new(3, 1)).unwrap();
        assert_eq!(r.results.dim, 3);
        assert_eq!(r.results.lower_dims, vec![3, 1, 0]);
        let r = run_experiment(&ExperimentConfig::new(2, 1)).unwrap();
        assert_eq!(r.results.dim, 1);
        assert_eq!(r.results.codim1_ideal.der_dim, 0);
    }

    #[test]
    fn abelian_plane_ideal() {
        let t = StructureTensor::zero(2);
        // functional (1, 0) in quotient coordinates: kernel is span{e2}
        let mut rng = SplitMix64::new(0);
        let (s, c) = codim1_random_ideal(&t, &mut rng, 10).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(c.len(), 2);
        let v: Vec<Scalar> = vec![scalar_from_i64(-c[1]), scalar_from_i64(c[0])];
        assert!(s.contains(&v).unwrap());
        assert!(codim1_random_ideal(&StructureTensor::zero(0), &mut rng, 10).is_err());
    }

    #[test]
    fn m6_matches_reference() {
        let r = run_experiment(&ExperimentConfig::new(6, 1)).unwrap();
        let res = &r.results;
        assert_eq!(res.dim, 8);
        assert_eq!(res.class, 5);
        assert_eq!(res.lower_dims, vec![8, 6, 5, 3, 1, 0]);
        assert_eq!(res.upper_dims, vec![0, 1, 3, 5, 6, 8]);
        assert_eq!(res.der, DerSummary { dim: 12, nilpotent: true });
        assert_eq!(res.commutant.der_dim, 24);
        assert!(!res.commutant.der_nilpotent);
        assert!(!res.codim1_ideal.der_nilpotent);
    }
}
