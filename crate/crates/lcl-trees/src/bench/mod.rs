//! Experiment orchestration and scaling-exponent estimation.

mod experiment;
mod fit;

pub use experiment::{
    effective_workers, lb_lengths, parse_variant, run_experiment, write_csv, BenchError,
    ExperimentConfig, ExperimentReport, FamilySpec, Row, CSV_HEADER,
};
pub use fit::{fit_exponent, predict, FitError, FitResult, Prediction, XTransform};
