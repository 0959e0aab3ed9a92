//! Experiment configuration, read from a flat TOML file.
//!
//! ```toml
//! dataset_dir = "../data/tfim4"      # relative to this file
//! output_dir = "../out/tfim4"
//! label = "TFIM-4"
//! train_bond_lengths = [0.2, 0.6, 1.0, 1.4, 1.8]
//! test_bond_lengths = [0.4, 0.8, 1.2, 1.6, 2.0]
//! variants = ["with-measurements", "without-measurements"]
//! seeds = [0, 1, 2, 3]
//! max_iterations = 500
//! gradient_norm_tolerance = 1e-5
//! finite_difference_step = 1e-6
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use hqnn::{OptimizerSettings, Variant};
use serde::{Deserialize, Serialize};

use crate::dataset::BOND_LENGTH_TOLERANCE;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dataset_dir: PathBuf,
    pub output_dir: PathBuf,
    #[serde(default = "default_label")]
    pub label: String,
    pub train_bond_lengths: Vec<f64>,
    #[serde(default)]
    pub test_bond_lengths: Vec<f64>,
    #[serde(with = "variant_names")]
    pub variants: Vec<Variant>,
    pub seeds: Vec<u64>,
    #[serde(default = "default_max_iterations")]
    pub max_iterations: usize,
    #[serde(default = "default_gradient_norm_tolerance")]
    pub gradient_norm_tolerance: f64,
    #[serde(default = "default_finite_difference_step")]
    pub finite_difference_step: f64,
    /// Directory the relative paths above are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

fn default_label() -> String {
    "dataset".to_string()
}

fn default_max_iterations() -> usize {
    OptimizerSettings::default().max_iterations
}

fn default_gradient_norm_tolerance() -> f64 {
    OptimizerSettings::default().gradient_norm_tolerance
}

fn default_finite_difference_step() -> f64 {
    OptimizerSettings::default().finite_difference_step
}

mod variant_names {
    use hqnn::Variant;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Variant], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|v| v.name()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Variant>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect()
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
        Self::from_toml(&text, base)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn from_toml(text: &str, base_dir: PathBuf) -> Result<Self> {
        let mut cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.base_dir = base_dir;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.train_bond_lengths.is_empty() {
            return bad("train_bond_lengths is empty".into());
        }
        for a in self
            .train_bond_lengths
            .iter()
            .chain(&self.test_bond_lengths)
        {
            if !a.is_finite() {
                return bad(format!("bond length {a} is not finite"));
            }
        }
        for (name, list) in [
            ("train_bond_lengths", &self.train_bond_lengths),
            ("test_bond_lengths", &self.test_bond_lengths),
        ] {
            if let Some(a) = first_duplicate(list, list) {
                return bad(format!("{name} lists {a} twice"));
            }
        }
        for a in &self.train_bond_lengths {
            if self
                .test_bond_lengths
                .iter()
                .any(|b| (a - b).abs() <= BOND_LENGTH_TOLERANCE)
            {
                return bad(format!("bond length {a} is in both train and test lists"));
            }
        }
        if self.seeds.is_empty() {
            return bad("seeds is empty".into());
        }
        if self.variants.is_empty() {
            return bad("variants is empty".into());
        }
        for (i, v) in self.variants.iter().enumerate() {
            if self.variants[..i].contains(v) {
                return bad(format!("variant {v} listed twice"));
            }
        }
        for (i, s) in self.seeds.iter().enumerate() {
            if self.seeds[..i].contains(s) {
                return bad(format!("seed {s} listed twice"));
            }
        }
        self.optimizer_settings()
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn optimizer_settings(&self) -> OptimizerSettings {
        OptimizerSettings {
            max_iterations: self.max_iterations,
            gradient_norm_tolerance: self.gradient_norm_tolerance,
            finite_difference_step: self.finite_difference_step,
        }
    }

    pub fn resolved_dataset_dir(&self) -> PathBuf {
        self.base_dir.join(&self.dataset_dir)
    }

    pub fn resolved_output_dir(&self) -> PathBuf {
        self.base_dir.join(&self.output_dir)
    }
}

/// First value of `a` that also appears at a different position of `b`
/// (or anywhere in `b` when the slices differ).
fn first_duplicate(a: &[f64], b: &[f64]) -> Option<f64> {
    a.iter().enumerate().find_map(|(i, x)| {
        b.iter()
            .enumerate()
            .any(|(j, y)| i != j && (x - y).abs() <= BOND_LENGTH_TOLERANCE)
            .then_some(*x)
    })
}
