//! Seeded experiments on generic subalgebras `N(X, Y)` and `N(X, Y, Z)`,
//! their analysis, and the reference results table.

mod analysis;
mod check;
mod golden;
mod rng;
mod run;

pub use analysis::{
    difference_analysis, expected_dimension, free_nilpotent_dim, mobius, rigidity_obstruction,
    witt_dims, DifferenceAnalysis, Rigidity,
};
pub use check::{check_paper_table, CellCheck, CheckReport};
pub use golden::{
    golden_row, golden_three_gen_row, GoldenRow, GOLDEN_TABLE, GOLDEN_THREE_GEN,
    M9_DERIVED_PREFIX, REPORTED_DIMENSIONS,
};
pub use rng::{trial_seed, SplitMix64};
pub use run::{
    codim1_random_ideal, random_generic_upper, run_experiment, CommutantSummary, DerSummary,
    ExperimentConfig, ExperimentReport, ExperimentResults, FormulaCheck, Generators, IdealSummary,
    SCHEMA_VERSION,
};
