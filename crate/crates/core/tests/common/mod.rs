//! Dense reference implementations built from Kronecker products, plus
//! seeded generators for random circuits, states and Hamiltonians.
#![allow(dead_code)]

use hqnn::{Complex64 as C, PauliAxis, PauliHamiltonian, PauliTerm, StateVector};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy)]
pub enum Gate {
    H(usize),
    Rx(usize, f64),
    Ry(usize, f64),
    Rz(usize, f64),
    Cnot(usize, usize),
}

pub fn random_gate<R: Rng>(rng: &mut R, n: usize) -> Gate {
    let q = rng.random_range(0..n);
    let theta = rng.random_range(-PI..PI);
    match rng.random_range(0..if n > 1 { 5 } else { 4 }) {
        0 => Gate::H(q),
        1 => Gate::Rx(q, theta),
        2 => Gate::Ry(q, theta),
        3 => Gate::Rz(q, theta),
        _ => {
            let mut t = rng.random_range(0..n - 1);
            if t >= q {
                t += 1;
            }
            Gate::Cnot(q, t)
        }
    }
}

pub fn apply(psi: &mut StateVector, gate: Gate) {
    match gate {
        Gate::H(q) => psi.apply_h(q),
        Gate::Rx(q, t) => psi.apply_rx(q, t),
        Gate::Ry(q, t) => psi.apply_ry(q, t),
        Gate::Rz(q, t) => psi.apply_rz(q, t),
        Gate::Cnot(c, t) => psi.apply_cnot(c, t),
    }
    .unwrap();
}

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn single(g: Gate) -> DMatrix<C> {
    let m = |a: [C; 4]| DMatrix::from_row_slice(2, 2, &a);
    match g {
        Gate::H(_) => {
            let s = FRAC_1_SQRT_2;
            m([c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)])
        }
        Gate::Rx(_, t) => {
            let (s, co) = (t / 2.0).sin_cos();
            m([c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0)])
        }
        Gate::Ry(_, t) => {
            let (s, co) = (t / 2.0).sin_cos();
            m([c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0)])
        }
        Gate::Rz(_, t) => m([
            C::from_polar(1.0, -t / 2.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            C::from_polar(1.0, t / 2.0),
        ]),
        Gate::Cnot(..) => unreachable!(),
    }
}

/// `ops[0] ⊗ ops[1] ⊗ ...`, qubit 0 most significant.
pub fn kron_all(ops: &[DMatrix<C>]) -> DMatrix<C> {
    ops.iter()
        .skip(1)
        .fold(ops[0].clone(), |acc, m| acc.kronecker(m))
}

pub fn dense_gate(n: usize, gate: Gate) -> DMatrix<C> {
    let dim = 1 << n;
    match gate {
        Gate::Cnot(ctl, tgt) => {
            let (cm, tm) = (1 << (n - 1 - ctl), 1 << (n - 1 - tgt));
            let mut m = DMatrix::zeros(dim, dim);
            for k in 0..dim {
                let j = if k & cm != 0 { k ^ tm } else { k };
                m[(j, k)] = c(1.0, 0.0);
            }
            m
        }
        Gate::H(q) | Gate::Rx(q, _) | Gate::Ry(q, _) | Gate::Rz(q, _) => {
            let ops: Vec<_> = (0..n)
                .map(|i| {
                    if i == q {
                        single(gate)
                    } else {
                        DMatrix::identity(2, 2)
                    }
                })
                .collect();
            kron_all(&ops)
        }
    }
}

pub fn pauli_matrix(a: PauliAxis) -> DMatrix<C> {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let v = match a {
        PauliAxis::I => [one, z, z, one],
        PauliAxis::X => [z, one, one, z],
        PauliAxis::Y => [z, c(0.0, -1.0), c(0.0, 1.0), z],
        PauliAxis::Z => [one, z, z, -one],
    };
    DMatrix::from_row_slice(2, 2, &v)
}

/// Dense matrix assembled term by term from Kronecker products.
pub fn dense_hamiltonian(h: &PauliHamiltonian) -> DMatrix<C> {
    let dim = 1 << h.n_qubits();
    let mut m = DMatrix::zeros(dim, dim);
    for t in h.terms() {
        let ops: Vec<_> = t.axes().iter().map(|&a| pauli_matrix(a)).collect();
        m += kron_all(&ops) * c(t.coefficient(), 0.0);
    }
    m
}

pub fn to_dvec(psi: &StateVector) -> DVector<C> {
    DVector::from_column_slice(psi.amplitudes())
}

pub fn quadratic_form(m: &DMatrix<C>, psi: &StateVector) -> f64 {
    let v = to_dvec(psi);
    (v.adjoint() * m * &v)[(0, 0)].re
}

pub fn max_abs_diff(a: &[C], b: &[C]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn random_state<R: Rng>(rng: &mut R, n: usize) -> StateVector {
    let amps = (0..1usize << n)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let mut psi = StateVector::from_amplitudes(amps).unwrap();
    psi.normalize();
    psi
}

pub fn random_hamiltonian<R: Rng>(rng: &mut R, n: usize, n_terms: usize) -> PauliHamiltonian {
    const AXES: [PauliAxis; 4] = [PauliAxis::I, PauliAxis::X, PauliAxis::Y, PauliAxis::Z];
    let terms = (0..n_terms)
        .map(|_| {
            let axes = (0..n).map(|_| AXES[rng.random_range(0..4)]).collect();
            PauliTerm::new(rng.random_range(-1.0..1.0), axes).unwrap()
        })
        .collect();
    PauliHamiltonian::from_terms(n, terms).unwrap()
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn eigenvalues(m: &DMatrix<C>) -> Vec<f64> {
    let mut ev: Vec<f64> = m
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}
