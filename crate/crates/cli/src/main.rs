use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hqnn::Variant;
use hqnn_cli::experiment::diag_csv;
use hqnn_cli::synthetic::default_grid;
use hqnn_cli::{
    gen_synthetic, gradcheck, load_all, load_dataset, run_compare, run_curve, run_train, CliError,
    ExperimentConfig,
};
use serde::Serialize;

/// Gradients at h and h/2 must agree to this relative tolerance.
const GRADCHECK_TOLERANCE: f64 = 1e-4;

#[derive(Parser)]
#[command(
    name = "hqnn",
    version,
    about = "Hybrid quantum-classical network for potential energy curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write transverse-field Ising .ham files, one per field strength.
    GenSynthetic {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 4)]
        qubits: usize,
        /// Comma-separated values; defaults to 0.2, 0.4, ..., 2.0.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        bond_lengths: Vec<f64>,
    },
    /// Exact ground energies of a dataset as CSV.
    Diag {
        #[arg(long)]
        dataset: PathBuf,
        /// Restrict to these bond lengths; all tagged files otherwise.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        bond_lengths: Vec<f64>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train one model and write its parameters as JSON.
    Train {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Defaults to the first variant in the config.
        #[arg(long)]
        variant: Option<Variant>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train every configured variant and seed; write results.csv and manifest.json.
    Curve {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run both variants and print the ablation table.
    Compare {
        #[arg(long)]
        config: PathBuf,
    },
    /// Compare finite-difference gradients at steps h and h/2.
    Gradcheck {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        variant: Option<Variant>,
    },
}

#[derive(Serialize)]
struct ModelFile<'a> {
    variant: &'a str,
    seed: u64,
    n_qubits: usize,
    parameters: &'a [f64],
    initial_cost: f64,
    final_cost: f64,
    iterations: usize,
    converged: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn write_or_print(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io {
            path: path.clone(),
            source: e,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::GenSynthetic {
            out,
            qubits,
            bond_lengths,
        } => {
            let grid = if bond_lengths.is_empty() {
                default_grid()
            } else {
                bond_lengths
            };
            for path in gen_synthetic(&out, qubits, &grid)? {
                println!("{}", path.display());
            }
        }
        Command::Diag {
            dataset,
            bond_lengths,
            out,
        } => {
            let ds = if bond_lengths.is_empty() {
                load_all(&dataset)?
            } else {
                load_dataset(&dataset, &bond_lengths)?
            };
            write_or_print(out.as_ref(), &diag_csv(&ds)?)?;
        }
        Command::Train {
            config,
            seed,
            variant,
            out,
        } => {
            let cfg = ExperimentConfig::load(&config)?;
            let variant = variant.unwrap_or(cfg.variants[0]);
            let seed = seed.unwrap_or(cfg.seeds[0]);
            let model = run_train(&cfg, variant, seed)?;
            let file = ModelFile {
                variant: variant.name(),
                seed,
                n_qubits: model.network.n_qubits(),
                parameters: &model.parameters,
                initial_cost: model.initial_cost,
                final_cost: model.final_cost,
                iterations: model.iterations_used,
                converged: model.converged,
            };
            let mut json = serde_json::to_string_pretty(&file)
                .map_err(|e| CliError::Data(format!("model: {e}")))?;
            json.push('\n');
            write_or_print(out.as_ref(), &json)?;
        }
        Command::Curve { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            for run in run_curve(&cfg)? {
                println!(
                    "{} ({}): Σ train error {}  Σ test error {}",
                    run.variant, cfg.label, run.manifest.train_error, run.manifest.test_error
                );
            }
            println!("wrote {}", cfg.resolved_output_dir().display());
        }
        Command::Compare { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            let (table, _) = run_compare(&cfg)?;
            print!("{table}");
        }
        Command::Gradcheck {
            config,
            seed,
            variant,
        } => {
            let cfg = ExperimentConfig::load(&config)?;
            let variant = variant.unwrap_or(cfg.variants[0]);
            let seed = seed.unwrap_or(cfg.seeds[0]);
            let dev = gradcheck(&cfg, variant, seed)?;
            println!("max relative deviation (h vs h/2): {dev:e}");
            if dev.is_nan() || dev > GRADCHECK_TOLERANCE {
                return Err(CliError::Numerical(format!(
                    "gradient step-halving deviation {dev:e} exceeds {GRADCHECK_TOLERANCE:e}"
                )));
            }
        }
    }
    Ok(())
}
