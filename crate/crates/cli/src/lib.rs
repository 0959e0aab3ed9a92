//! Reproduction harness for potential-energy-curve training.
//!
//! Loads `.ham` datasets, trains the hybrid network per seed, evaluates
//! train and test bond lengths against exact diagonalization, and writes
//! CSV results, JSON manifests and the with/without-measurement ablation
//! table. The `hqnn` binary wraps these functions.

pub mod config;
pub mod dataset;
pub mod error;
pub mod experiment;
pub mod report;
pub mod synthetic;

pub use config::ExperimentConfig;
pub use dataset::{load_all, load_dataset, CurveDataset};
pub use error::{CliError, Result};
pub use experiment::{gradcheck, run_compare, run_curve, run_diag, run_train};
pub use synthetic::gen_synthetic;
