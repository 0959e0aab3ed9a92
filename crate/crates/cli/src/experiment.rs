//! Training runs, curve evaluation and the with/without-measurement ablation.
//!
//! Output layout under `output_dir`:
//!
//! ```text
//! <variant>/results.csv     per-seed predictions for every train/test point
//! <variant>/manifest.json   config echo, per-seed summaries, error statistics
//! ablation.csv, ablation.txt  (compare only)
//! ```

use std::fs;
use std::path::Path;

use hqnn::optimize::{evaluate_against, gradient_step_halving};
use hqnn::{
    ground_energy, init_params, train, NetworkSpec, PauliHamiltonian, TrainedModel,
    TrainingProblem, Variant,
};

use crate::config::ExperimentConfig;
use crate::dataset::{load_dataset, CurveDataset};
use crate::error::{CliError, Result};
use crate::report::{
    construction_name, software_id, timestamp_from_env, write_diag_csv, write_results_csv,
    AblationRow, AblationTable, DiagRow, ResultRow, RunManifest, SeedSummary, Split, Stat,
};

/// Train and test curves with their exact ground energies.
#[derive(Debug, Clone)]
pub struct PreparedData {
    pub n_qubits: usize,
    pub train: Vec<Point>,
    pub test: Vec<Point>,
}

#[derive(Debug, Clone)]
pub struct Point {
    pub bond_length: f64,
    pub hamiltonian: PauliHamiltonian,
    pub exact: f64,
}

#[derive(Debug, Clone)]
pub struct VariantRun {
    pub variant: Variant,
    pub rows: Vec<ResultRow>,
    pub manifest: RunManifest,
    pub models: Vec<TrainedModel>,
}

pub fn prepare(config: &ExperimentConfig) -> Result<PreparedData> {
    let dir = config.resolved_dataset_dir();
    let train = load_dataset(&dir, &config.train_bond_lengths)?;
    let test = load_dataset(&dir, &config.test_bond_lengths)?;
    let n_qubits = train.n_qubits().expect("train list is non-empty");
    if let Some(m) = test.n_qubits().filter(|&m| m != n_qubits) {
        return Err(CliError::Data(format!(
            "train Hamiltonians have {n_qubits} qubits but test Hamiltonians have {m}"
        )));
    }
    Ok(PreparedData {
        n_qubits,
        train: with_exact(train)?,
        test: with_exact(test)?,
    })
}

fn with_exact(ds: CurveDataset) -> Result<Vec<Point>> {
    ds.into_entries()
        .into_iter()
        .map(|(a, h)| {
            let exact = ground_energy(&h)
                .map_err(|e| CliError::from_core(format!("diagonalizing bond length {a}"), e))?;
            Ok(Point {
                bond_length: a,
                hamiltonian: h,
                exact,
            })
        })
        .collect()
}

fn problem_for(data: &PreparedData, variant: Variant) -> Result<TrainingProblem> {
    let net = NetworkSpec::new(data.n_qubits, variant)
        .map_err(|e| CliError::from_core("building network", e))?;
    let set = data
        .train
        .iter()
        .map(|p| (p.bond_length, p.hamiltonian.clone()))
        .collect();
    TrainingProblem::new(net, set).map_err(|e| CliError::from_core("training problem", e))
}

/// Trains one variant for every configured seed and evaluates all points.
pub fn run_variant(
    config: &ExperimentConfig,
    data: &PreparedData,
    variant: Variant,
) -> Result<VariantRun> {
    let problem = problem_for(data, variant)?;
    let settings = config.optimizer_settings();
    let mut rows = Vec::new();
    let mut seeds = Vec::new();
    let mut models = Vec::new();

    for &seed in &config.seeds {
        let model = train(&problem, seed, &settings)
            .map_err(|e| CliError::from_core(format!("training {variant} seed {seed}"), e))?;
        let mut sums = [0.0f64; 2];
        for (split, points) in [(Split::Train, &data.train), (Split::Test, &data.test)] {
            for p in points {
                let ev = evaluate_against(&model, p.bond_length, &p.hamiltonian, p.exact)
                    .map_err(|e| CliError::from_core("evaluating", e))?;
                sums[split as usize] += ev.abs_error;
                rows.push(ResultRow {
                    bond_length: p.bond_length,
                    split,
                    energy_predicted: ev.energy,
                    energy_exact: ev.exact,
                    abs_error: ev.abs_error,
                    seed,
                });
            }
        }
        seeds.push(SeedSummary {
            seed,
            initial_cost: model.initial_cost,
            final_cost: model.final_cost,
            iterations: model.iterations_used,
            converged: model.converged,
            termination: format!("{:?}", model.termination),
            gradient_inf_norm: model.gradient_inf_norm,
            train_error_sum: sums[0],
            test_error_sum: sums[1],
        });
        models.push(model);
    }

    let train_sums: Vec<f64> = seeds.iter().map(|s| s.train_error_sum).collect();
    let test_sums: Vec<f64> = seeds.iter().map(|s| s.test_error_sum).collect();
    let manifest = RunManifest {
        software: software_id(),
        timestamp: timestamp_from_env(),
        config: config.clone(),
        label: config.label.clone(),
        variant: variant.name().to_string(),
        n_qubits: data.n_qubits,
        n_params: problem.n_params(),
        seeds,
        train_error: Stat::of(&train_sums),
        test_error: Stat::of(&test_sums),
    };
    Ok(VariantRun {
        variant,
        rows,
        manifest,
        models,
    })
}

fn write_run(out_dir: &Path, run: &VariantRun) -> Result<()> {
    let dir = out_dir.join(run.variant.name());
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let mut csv = Vec::new();
    write_results_csv(&run.rows, &mut csv)?;
    let path = dir.join("results.csv");
    fs::write(&path, csv).map_err(|e| CliError::io(&path, e))?;
    let path = dir.join("manifest.json");
    fs::write(&path, run.manifest.to_json()?).map_err(|e| CliError::io(&path, e))?;
    Ok(())
}

/// Trains every configured variant and writes its results and manifest.
pub fn run_curve(config: &ExperimentConfig) -> Result<Vec<VariantRun>> {
    let data = prepare(config)?;
    let out_dir = config.resolved_output_dir();
    let mut runs = Vec::with_capacity(config.variants.len());
    for &variant in &config.variants {
        let run = run_variant(config, &data, variant)?;
        write_run(&out_dir, &run)?;
        runs.push(run);
    }
    Ok(runs)
}

/// Runs both variants on the same seeds and split and tabulates the
/// per-seed error sums.
pub fn run_compare(config: &ExperimentConfig) -> Result<(AblationTable, Vec<VariantRun>)> {
    for v in Variant::ALL {
        if !config.variants.contains(&v) {
            return Err(CliError::Config(format!(
                "compare needs both variants; `variants` is missing `{v}`"
            )));
        }
    }
    if config.seeds.len() < 2 {
        return Err(CliError::Config(
            "compare needs at least two seeds".to_string(),
        ));
    }
    let runs = run_curve(config)?;
    let rows = runs
        .iter()
        .map(|run| {
            let train: Vec<f64> = run
                .manifest
                .seeds
                .iter()
                .map(|s| s.train_error_sum)
                .collect();
            let test: Vec<f64> = run
                .manifest
                .seeds
                .iter()
                .map(|s| s.test_error_sum)
                .collect();
            AblationRow {
                variant: run.variant.name().to_string(),
                label: config.label.clone(),
                train_error_mean: run.manifest.train_error.mean,
                train_error_std: run.manifest.train_error.std,
                test_error_mean: run.manifest.test_error.mean,
                test_error_std: run.manifest.test_error.std,
                train_error_sums: train,
                test_error_sums: test,
                construction: construction_name(run.variant),
            }
        })
        .collect();
    let table = AblationTable { rows };

    let out_dir = config.resolved_output_dir();
    let mut csv = Vec::new();
    table.write_csv(&mut csv)?;
    let path = out_dir.join("ablation.csv");
    fs::write(&path, csv).map_err(|e| CliError::io(&path, e))?;
    let path = out_dir.join("ablation.txt");
    fs::write(&path, table.to_string()).map_err(|e| CliError::io(&path, e))?;
    Ok((table, runs))
}

/// Exact ground energy for every entry of the dataset.
pub fn run_diag(dataset: &CurveDataset) -> Result<Vec<DiagRow>> {
    dataset
        .entries()
        .iter()
        .map(|(a, h)| {
            let e = ground_energy(h)
                .map_err(|e| CliError::from_core(format!("diagonalizing bond length {a}"), e))?;
            Ok(DiagRow {
                bond_length: *a,
                ground_energy: e,
            })
        })
        .collect()
}

pub fn diag_csv(dataset: &CurveDataset) -> Result<String> {
    let rows = run_diag(dataset)?;
    let mut buf = Vec::new();
    write_diag_csv(&rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

/// Trains a single `(variant, seed)` model on the configured training set.
pub fn run_train(config: &ExperimentConfig, variant: Variant, seed: u64) -> Result<TrainedModel> {
    let data = prepare(config)?;
    let problem = problem_for(&data, variant)?;
    train(&problem, seed, &config.optimizer_settings())
        .map_err(|e| CliError::from_core(format!("training {variant} seed {seed}"), e))
}

/// Step-halving gradient check at the seeded initial parameters:
/// relative disagreement between gradients at `h` and `h/2`.
pub fn gradcheck(config: &ExperimentConfig, variant: Variant, seed: u64) -> Result<f64> {
    let data = prepare(config)?;
    let problem = problem_for(&data, variant)?;
    let w = init_params(problem.n_params(), seed);
    gradient_step_halving(&w, &problem, config.finite_difference_step)
        .map_err(|e| CliError::from_core("gradient check", e))
}
