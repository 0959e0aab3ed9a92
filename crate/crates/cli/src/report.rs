//! Result rows, run manifests and the ablation table.

use std::fmt;
use std::io::Write;

use hqnn::Variant;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

/// One line of `results.csv`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub bond_length: f64,
    pub split: Split,
    pub energy_predicted: f64,
    pub energy_exact: f64,
    pub abs_error: f64,
    pub seed: u64,
}

pub fn write_results_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    if rows.is_empty() {
        w.write_record([
            "bond_length",
            "split",
            "energy_predicted",
            "energy_exact",
            "abs_error",
            "seed",
        ])
        .map_err(csv_err)?;
    }
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| CliError::Data(format!("csv: {e}")))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagRow {
    pub bond_length: f64,
    pub ground_energy: f64,
}

pub fn write_diag_csv<W: Write>(rows: &[DiagRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    if rows.is_empty() {
        w.write_record(["bond_length", "ground_energy"])
            .map_err(csv_err)?;
    }
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| CliError::Data(format!("csv: {e}")))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Data(format!("csv: {e}"))
}

/// Mean and population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
}

impl Stat {
    pub fn of(values: &[f64]) -> Self {
        if values.is_empty() {
            return Stat {
                mean: f64::NAN,
                std: f64::NAN,
            };
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        Stat {
            mean,
            std: var.sqrt(),
        }
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.4} ± {:.4}", self.mean, self.std)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeedSummary {
    pub seed: u64,
    pub initial_cost: f64,
    pub final_cost: f64,
    pub iterations: usize,
    pub converged: bool,
    pub termination: String,
    pub gradient_inf_norm: f64,
    pub train_error_sum: f64,
    pub test_error_sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub software: String,
    /// Unix seconds from `SOURCE_DATE_EPOCH`; absent otherwise so that
    /// reruns stay byte-identical.
    pub timestamp: Option<u64>,
    pub config: ExperimentConfig,
    pub label: String,
    pub variant: String,
    pub n_qubits: usize,
    pub n_params: usize,
    pub seeds: Vec<SeedSummary>,
    pub train_error: Stat,
    pub test_error: Stat,
}

impl RunManifest {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Data(format!("manifest: {e}")))?;
        s.push('\n');
        Ok(s)
    }
}

pub fn software_id() -> String {
    format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"))
}

pub fn timestamp_from_env() -> Option<u64> {
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse().ok())
}

pub fn construction_name(v: Variant) -> &'static str {
    match v {
        Variant::WithIntermediateMeasurements => "With intermediate measurements",
        Variant::WithoutIntermediateMeasurements => "Without intermediate measurements",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AblationRow {
    pub variant: String,
    pub label: String,
    pub train_error_mean: f64,
    pub train_error_std: f64,
    pub test_error_mean: f64,
    pub test_error_std: f64,
    /// Per-seed sums, in config seed order.
    #[serde(skip)]
    pub train_error_sums: Vec<f64>,
    #[serde(skip)]
    pub test_error_sums: Vec<f64>,
    #[serde(skip)]
    pub construction: &'static str,
}

/// One row per variant: mean ± std of the per-seed error sums.
#[derive(Debug, Clone, PartialEq)]
pub struct AblationTable {
    pub rows: Vec<AblationRow>,
}

impl AblationTable {
    pub fn row(&self, variant: Variant) -> Option<&AblationRow> {
        self.rows.iter().find(|r| r.variant == variant.name())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        for row in &self.rows {
            w.serialize(row).map_err(csv_err)?;
        }
        w.flush().map_err(|e| CliError::Data(format!("csv: {e}")))
    }
}

impl fmt::Display for AblationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("{} ({})", r.construction, r.label))
            .collect();
        let width = names.iter().map(|n| n.chars().count()).max().unwrap_or(0);
        writeln!(
            f,
            "{:<width$}  {:<20}  {:<20}",
            "Construction", "Σ training error", "Σ testing error"
        )?;
        for (name, r) in names.iter().zip(&self.rows) {
            let train = Stat {
                mean: r.train_error_mean,
                std: r.train_error_std,
            };
            let test = Stat {
                mean: r.test_error_mean,
                std: r.test_error_std,
            };
            writeln!(
                f,
                "{:<width$}  {:<20}  {:<20}",
                name,
                train.to_string(),
                test.to_string()
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn population_std() {
        let s = Stat::of(&[1.0, 3.0]);
        assert_eq!(s.mean, 2.0);
        assert_eq!(s.std, 1.0);
        assert_eq!(Stat::of(&[5.0]).std, 0.0);
        assert!(Stat::of(&[]).mean.is_nan());
    }

    #[test]
    fn empty_results_still_have_header() {
        let mut buf = Vec::new();
        write_results_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "bond_length,split,energy_predicted,energy_exact,abs_error,seed\n"
        );
        let mut buf = Vec::new();
        write_diag_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "bond_length,ground_energy\n"
        );
    }

    #[test]
    fn rows_serialize_with_lowercase_split() {
        let row = ResultRow {
            bond_length: 0.5,
            split: Split::Test,
            energy_predicted: -1.0,
            energy_exact: -1.25,
            abs_error: 0.25,
            seed: 3,
        };
        let mut buf = Vec::new();
        write_results_csv(&[row], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().nth(1).unwrap(), "0.5,test,-1.0,-1.25,0.25,3");
    }
}
