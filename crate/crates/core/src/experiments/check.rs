use serde::Serialize;

use super::golden::GoldenRow;
use super::run::{run_experiment, ExperimentConfig, ExperimentReport};
use crate::error::{Error, Result};
use crate::report::join;

/// One compared quantity of one run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellCheck {
    pub m: usize,
    pub gens: u8,
    pub seed: u64,
    pub field: &'static str,
    pub expected: String,
    pub actual: String,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub cells: Vec<CellCheck>,
    pub all_match: bool,
}

impl CheckReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &CellCheck> {
        self.cells.iter().filter(|c| !c.matched)
    }
}

fn compare(report: &ExperimentReport, row: &GoldenRow) -> Vec<CellCheck> {
    let r = &report.results;
    let mut cells = Vec::new();
    let mut push = |field: &'static str, expected: String, actual: String| {
        cells.push(CellCheck {
            m: report.config.m,
            gens: report.config.gens,
            seed: report.config.seed,
            field,
            matched: expected == actual,
            expected,
            actual,
        });
    };
    push("dim", row.dim.to_string(), r.dim.to_string());
    push("class", row.class.to_string(), r.class.to_string());
    push("lower_dims", join(row.lower_dims), join(&r.lower_dims));
    push("der_dim", row.der_dim.to_string(), r.der.dim.to_string());
    push(
        "der_nilpotent",
        row.der_nilpotent.to_string(),
        r.der.nilpotent.to_string(),
    );
    if report.config.gens == 2 {
        push(
            "commutant_der_dim",
            row.commutant_der_dim.to_string(),
            r.commutant.der_dim.to_string(),
        );
        push(
            "commutant_der_nilpotent",
            row.commutant_der_nilpotent.to_string(),
            r.commutant.der_nilpotent.to_string(),
        );
        push(
            "codim1_der_nilpotent",
            row.codim1_der_nilpotent.to_string(),
            r.codim1_ideal.der_nilpotent.to_string(),
        );
    }
    cells
}

/// Runs every `(m, seed)` experiment with `gens` generators and compares
/// it cell by cell with `golden`. Mismatches are part of the report.
pub fn check_paper_table(
    seeds: &[u64],
    ms: &[usize],
    gens: u8,
    golden: &[GoldenRow],
) -> Result<CheckReport> {
    if seeds.is_empty() {
        return Err(Error::InvalidConfig("at least one seed is required".into()));
    }
    let mut cells = Vec::new();
    for &m in ms {
        let row = golden
            .iter()
            .find(|r| r.m == m)
            .ok_or_else(|| Error::InvalidConfig(format!("no reference row for m = {m}")))?;
        for &seed in seeds {
            let report = run_experiment(&ExperimentConfig::new(m, seed).with_gens(gens))?;
            cells.extend(compare(&report, row));
        }
    }
    let all_match = cells.iter().all(|c| c.matched);
    Ok(CheckReport { cells, all_match })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::GOLDEN_TABLE;

    #[test]
    fn small_rows_match() {
        let report = check_paper_table(&[1, 2], &[4, 5], 2, &GOLDEN_TABLE).unwrap();
        assert!(report.all_match, "{:?}", report.mismatches().collect::<Vec<_>>());
        assert_eq!(report.cells.len(), 2 * 2 * 8);
    }

    #[test]
    fn corrupted_row_is_reported() {
        let mut golden = GOLDEN_TABLE;
        golden[0].der_dim = 8;
        let report = check_paper_table(&[1], &[4], 2, &golden).unwrap();
        assert!(!report.all_match);
        let bad: Vec<_> = report.mismatches().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].field, "der_dim");
        assert_eq!((bad[0].expected.as_str(), bad[0].actual.as_str()), ("8", "7"));
    }

    #[test]
    fn missing_row_or_seed() {
        assert!(check_paper_table(&[1], &[3], 2, &GOLDEN_TABLE).is_err());
        assert!(check_paper_table(&[], &[4], 2, &GOLDEN_TABLE).is_err());
    }
}
