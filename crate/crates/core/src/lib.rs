//! Hybrid quantum-classical neural networks for potential-energy curves.
//!
//! The network alternates parameterized quantum circuits (Ry rotations and
//! CNOT ladders) with a classical layer of per-qubit `<Z>` expectation
//! values that are re-encoded as rotation angles. It is trained with BFGS so
//! that, for every training bond length, the output state minimizes the
//! energy of that bond length's Pauli-string Hamiltonian.
//!
//! Modules:
//! - [`pauli`]: Hamiltonians as real-weighted sums of Pauli strings.
//! - [`statevector`]: matrix-free n-qubit state simulation.
//! - [`network`]: encoding, circuit blocks and the measurement layer.
//! - [`optimize`]: cost, finite-difference gradients, BFGS and training.
//! - [`oracle`]: exact ground energies by diagonalization.
//!
//! Basis ordering: qubit 0 is the leftmost tensor factor, i.e. the most
//! significant bit of an amplitude index. Every module shares it.

pub mod error;
pub mod network;
pub mod optimize;
pub mod oracle;
pub mod pauli;
pub mod statevector;

pub use error::{Error, ParseErrorKind, ParseHamiltonianError, Result};
pub use network::{
    apply_encoding, apply_pqc, entangler_pattern, measure_layer, Block, EncodingSpec, NetworkSpec,
    ParameterVector, PqcSpec, Variant,
};
pub use optimize::{
    bfgs_minimize, cost, evaluate, gradient, init_params, train, BfgsOutcome, Evaluation,
    OptimizerSettings, Termination, TrainedModel, TrainingProblem,
};
pub use oracle::{ground_energy, ground_state, lanczos_ground_energy, spectral_bounds};
pub use pauli::{
    apply_term, expectation, format_hamiltonian, parse_hamiltonian, PauliAxis, PauliHamiltonian,
    PauliTerm,
};
pub use statevector::StateVector;

pub use num_complex::Complex64;
