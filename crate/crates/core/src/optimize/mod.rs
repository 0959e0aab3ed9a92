//! Training the network over a set of bond lengths.
//!
//! The cost is the summed energy `sum_j <phi_j|H_j|phi_j>` over the training
//! points, where `|phi_j>` is the network output for bond length `a_j`.
//! Gradients are central finite differences; BFGS does the minimization.

mod bfgs;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

pub use bfgs::{bfgs_minimize, BfgsOutcome, Termination, WOLFE_C1, WOLFE_C2};

use crate::error::{Error, Result};
use crate::network::{NetworkSpec, ParameterVector};
use crate::oracle;
use crate::pauli::PauliHamiltonian;

/// Standard deviation of the Gaussian parameter initialization.
pub const INIT_STD: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerSettings {
    pub max_iterations: usize,
    /// Stop once `||grad||_inf` falls to this value.
    pub gradient_norm_tolerance: f64,
    /// Central-difference step `h`.
    pub finite_difference_step: f64,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            gradient_norm_tolerance: 1e-5,
            finite_difference_step: 1e-6,
        }
    }
}

impl OptimizerSettings {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidSettings(
                "max_iterations must be positive".into(),
            ));
        }
        for (name, v) in [
            ("gradient_norm_tolerance", self.gradient_norm_tolerance),
            ("finite_difference_step", self.finite_difference_step),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidSettings(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// A network plus the `(bond length, Hamiltonian)` points it is trained on.
#[derive(Debug, Clone)]
pub struct TrainingProblem {
    network: NetworkSpec,
    training_set: Vec<(f64, PauliHamiltonian)>,
}

impl TrainingProblem {
    pub fn new(network: NetworkSpec, training_set: Vec<(f64, PauliHamiltonian)>) -> Result<Self> {
        if training_set.is_empty() {
            return Err(Error::EmptyTrainingSet);
        }
        for (a, h) in &training_set {
            if !a.is_finite() {
                return Err(Error::NonFinite(format!("bond length {a}")));
            }
            if h.n_qubits() != network.n_qubits() {
                return Err(Error::QubitCountMismatch {
                    expected: network.n_qubits(),
                    found: h.n_qubits(),
                });
            }
        }
        Ok(Self {
            network,
            training_set,
        })
    }

    pub fn network(&self) -> &NetworkSpec {
        &self.network
    }

    pub fn training_set(&self) -> &[(f64, PauliHamiltonian)] {
        &self.training_set
    }

    pub fn n_params(&self) -> usize {
        self.network.n_params()
    }

    fn check_params(&self, params: &[f64]) -> Result<()> {
        let k = self.n_params();
        if params.len() != k {
            return Err(Error::ParameterLength {
                expected: k,
                found: params.len(),
            });
        }
        Ok(())
    }

    /// Cost for parameters already known to have the right length. Points are
    /// summed in training-set order.
    fn cost_unchecked(&self, params: &[f64]) -> f64 {
        self.training_set
            .iter()
            .map(|(a, h)| {
                let phi = self
                    .network
                    .forward(*a, params)
                    .expect("problem and parameters validated");
                h.expectation(&phi).expect("qubit counts validated")
            })
            .sum()
    }

    fn gradient_unchecked(&self, params: &[f64], step: f64) -> Vec<f64> {
        // Each coordinate is independent; collect() keeps index order so the
        // result does not depend on scheduling.
        (0..params.len())
            .into_par_iter()
            .map(|i| {
                let mut w = params.to_vec();
                w[i] = params[i] + step;
                let up = self.cost_unchecked(&w);
                w[i] = params[i] - step;
                let down = self.cost_unchecked(&w);
                (up - down) / (2.0 * step)
            })
            .collect()
    }
}

/// `sum_j <phi_j|H_j|phi_j>` over the training points.
pub fn cost(params: &[f64], problem: &TrainingProblem) -> Result<f64> {
    problem.check_params(params)?;
    Ok(problem.cost_unchecked(params))
}

/// Central-difference gradient `(f(w + h e_i) - f(w - h e_i)) / 2h`.
pub fn gradient(params: &[f64], problem: &TrainingProblem, step: f64) -> Result<Vec<f64>> {
    problem.check_params(params)?;
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidSettings(format!(
            "finite-difference step {step}"
        )));
    }
    Ok(problem.gradient_unchecked(params, step))
}

/// Relative disagreement between gradients taken with steps `h` and `h/2`:
/// `||g_h - g_{h/2}||_inf / ||g_h||_inf` (absolute when `g_h` vanishes).
pub fn gradient_step_halving(params: &[f64], problem: &TrainingProblem, step: f64) -> Result<f64> {
    let full = gradient(params, problem, step)?;
    let half = gradient(params, problem, step / 2.0)?;
    let diff = full
        .iter()
        .zip(&half)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let scale = full.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    Ok(if scale > 0.0 { diff / scale } else { diff })
}

/// `k` draws from `N(0, 0.1^2)` using a ChaCha8 stream seeded with `seed`.
pub fn init_params(k: usize, seed: u64) -> ParameterVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, INIT_STD).expect("valid normal parameters");
    ParameterVector::new((0..k).map(|_| normal.sample(&mut rng)).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    pub network: NetworkSpec,
    pub parameters: ParameterVector,
    pub initial_cost: f64,
    pub final_cost: f64,
    pub iterations_used: usize,
    pub converged: bool,
    pub termination: Termination,
    pub gradient_inf_norm: f64,
    pub cost_history: Vec<f64>,
}

/// Initializes from `seed` and minimizes the cost with BFGS.
pub fn train(
    problem: &TrainingProblem,
    seed: u64,
    settings: &OptimizerSettings,
) -> Result<TrainedModel> {
    let x0 = init_params(problem.n_params(), seed);
    train_from(problem, &x0, settings)
}

/// Minimizes the cost starting from explicit parameters.
pub fn train_from(
    problem: &TrainingProblem,
    x0: &[f64],
    settings: &OptimizerSettings,
) -> Result<TrainedModel> {
    problem.check_params(x0)?;
    settings.validate()?;
    let step = settings.finite_difference_step;
    let out = bfgs_minimize(
        |w| problem.cost_unchecked(w),
        |w| problem.gradient_unchecked(w, step),
        x0,
        settings,
    )?;
    Ok(TrainedModel {
        network: problem.network.clone(),
        parameters: ParameterVector::new(out.x),
        initial_cost: out.history[0],
        final_cost: out.f,
        iterations_used: out.iterations,
        converged: out.converged,
        termination: out.termination,
        gradient_inf_norm: out.gradient_inf_norm,
        cost_history: out.history,
    })
}

/// Predicted energy at one bond length, with its distance from the exact
/// ground energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub energy: f64,
    pub exact: f64,
    pub abs_error: f64,
}

pub fn evaluate(
    model: &TrainedModel,
    bond_length: f64,
    h: &PauliHamiltonian,
) -> Result<Evaluation> {
    let exact = oracle::ground_energy(h)?;
    evaluate_against(model, bond_length, h, exact)
}

/// As [`evaluate`], with a precomputed exact ground energy.
pub fn evaluate_against(
    model: &TrainedModel,
    bond_length: f64,
    h: &PauliHamiltonian,
    exact: f64,
) -> Result<Evaluation> {
    let phi = model.network.forward(bond_length, &model.parameters)?;
    let energy = h.expectation(&phi)?;
    Ok(Evaluation {
        energy,
        exact,
        abs_error: (energy - exact).abs(),
    })
}
