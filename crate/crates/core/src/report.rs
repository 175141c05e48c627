//! Structured (JSON) and text rendering of experiment reports.
//!
//! Matrix entries are written as JSON numbers when they are integers that
//! fit in 64 bits and as `"p/q"` strings otherwise, so any rational matrix
//! survives a round trip.

use std::fmt::Write as _;

use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::{ExperimentReport, GoldenRow, GOLDEN_TABLE, GOLDEN_THREE_GEN};
use crate::linalg::{format_scalar, parse_scalar, scalar_from_i64, DenseMatrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum JsonScalar {
    Int(i64),
    Text(String),
}

impl JsonScalar {
    fn from_scalar(s: &Scalar) -> Self {
        if s.denom().is_one() {
            if let Some(v) = s.numer().to_i64() {
                return JsonScalar::Int(v);
            }
        }
        JsonScalar::Text(format_scalar(s))
    }

    fn to_scalar(&self) -> Result<Scalar> {
        match self {
            JsonScalar::Int(v) => Ok(scalar_from_i64(*v)),
            JsonScalar::Text(t) => parse_scalar(t),
        }
    }
}

fn matrix_to_json(m: &DenseMatrix) -> Vec<Vec<JsonScalar>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(JsonScalar::from_scalar).collect())
        .collect()
}

fn matrix_from_json(rows: &[Vec<JsonScalar>]) -> Result<DenseMatrix> {
    let converted: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| r.iter().map(JsonScalar::to_scalar).collect())
        .collect::<Result<_>>()?;
    DenseMatrix::from_rows(&converted)
}

/// `#[serde(with = "matrix_json")]` for [`DenseMatrix`] fields.
pub mod matrix_json {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &DenseMatrix, ser: S) -> std::result::Result<S::Ok, S::Error> {
        matrix_to_json(m).serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<DenseMatrix, D::Error> {
        let rows = Vec::<Vec<JsonScalar>>::deserialize(de)?;
        matrix_from_json(&rows).map_err(serde::de::Error::custom)
    }
}

/// `#[serde(with = "opt_matrix_json")]` for optional matrices.
pub mod opt_matrix_json {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        m: &Option<DenseMatrix>,
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        m.as_ref().map(matrix_to_json).serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Option<DenseMatrix>, D::Error> {
        let rows = Option::<Vec<Vec<JsonScalar>>>::deserialize(de)?;
        rows.map(|r| matrix_from_json(&r))
            .transpose()
            .map_err(serde::de::Error::custom)
    }
}

pub fn to_json(report: &ExperimentReport) -> String {
    serde_json::to_string_pretty(report).expect("report types serialize")
}

pub fn from_json(text: &str) -> Result<ExperimentReport> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub(crate) fn join(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub(crate) fn nil_word(nilpotent: bool) -> &'static str {
    if nilpotent {
        "nilpotent"
    } else {
        "non-nilpotent"
    }
}

fn write_matrix(out: &mut String, name: &str, m: &DenseMatrix) {
    let _ = writeln!(out, "{name} =");
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| format!("{:>4}", format_scalar(x))).collect();
        let _ = writeln!(out, "  [{}]", row.join(""));
    }
}

/// Human-readable report carrying the same numbers as the JSON form.
pub fn render_text(report: &ExperimentReport) -> String {
    let c = &report.config;
    let r = &report.results;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "config: m={} gens={} seed={} bound={} generic={}",
        c.m, c.gens, c.seed, c.bound, c.generic
    );
    write_matrix(&mut out, "X", &report.generators.x);
    write_matrix(&mut out, "Y", &report.generators.y);
    if let Some(z) = &report.generators.z {
        write_matrix(&mut out, "Z", z);
    }
    let _ = writeln!(out, "dim N = {}, class l = {}", r.dim, r.class);
    let _ = writeln!(out, "lower central dims: {}", join(&r.lower_dims));
    let _ = writeln!(out, "upper central dims: {}", join(&r.upper_dims));
    let _ = writeln!(out, "derived dims: {}", join(&r.derived_dims));
    let _ = writeln!(out, "center dim: {}", r.center_dim);
    let _ = writeln!(out, "generators: {}", r.generators_count);
    let _ = writeln!(out, "dim Der(N) = {}; {}", r.der.dim, nil_word(r.der.nilpotent));
    let _ = writeln!(
        out,
        "[N,N]: dim {}; dim Der = {}; {}",
        r.commutant.dim,
        r.commutant.der_dim,
        nil_word(r.commutant.der_nilpotent)
    );
    let coeffs: Vec<String> = r.codim1_ideal.coefficients.iter().map(ToString::to_string).collect();
    let _ = writeln!(
        out,
        "codim-1 ideal (functional {}): dim Der = {}; {}",
        coeffs.join(","),
        r.codim1_ideal.der_dim,
        nil_word(r.codim1_ideal.der_nilpotent)
    );
    let _ = writeln!(
        out,
        "formula floor(m(m+1)/5) = {} ({})",
        r.formula.expected,
        if r.formula.matches { "match" } else { "mismatch" }
    );
    let _ = writeln!(out, "fingerprint: {}", report.fingerprint);
    out
}

#[derive(Serialize)]
struct GoldenExport<'a> {
    schema_version: u32,
    two_generators: &'a [GoldenRow],
    three_generators: &'a [GoldenRow],
}

/// The embedded reference table as JSON.
pub fn golden_table_json() -> String {
    serde_json::to_string_pretty(&GoldenExport {
        schema_version: crate::experiments::SCHEMA_VERSION,
        two_generators: &GOLDEN_TABLE,
        three_generators: &GOLDEN_THREE_GEN,
    })
    .expect("golden rows serialize")
}
