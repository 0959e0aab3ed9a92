//! Exact ground energies, the reference for every error metric.
//!
//! The primary path is a full dense Hermitian eigendecomposition of the
//! materialized Hamiltonian. [`lanczos_ground_energy`] is an independent
//! matrix-free Krylov path (full reorthogonalization) used to cross-check it.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pauli::PauliHamiltonian;
use crate::statevector::{StateVector, MAX_QUBITS};

fn dense_eigen(h: &PauliHamiltonian) -> Result<SymmetricEigen<Complex64, nalgebra::Dyn>> {
    let m = h.to_dense()?;
    Ok(m.symmetric_eigen())
}

fn argmin(values: impl Iterator<Item = f64>) -> (usize, f64) {
    values.enumerate().fold(
        (0, f64::INFINITY),
        |best, (i, v)| if v < best.1 { (i, v) } else { best },
    )
}

/// Smallest eigenvalue of `H`.
pub fn ground_energy(h: &PauliHamiltonian) -> Result<f64> {
    let eig = dense_eigen(h)?;
    Ok(argmin(eig.eigenvalues.iter().copied()).1)
}

/// `(lambda_min, lambda_max)` of `H`.
pub fn spectral_bounds(h: &PauliHamiltonian) -> Result<(f64, f64)> {
    let eig = dense_eigen(h)?;
    let min = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let max = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    Ok((min, max))
}

/// A normalized eigenvector for the smallest eigenvalue. Under degeneracy any
/// vector of the ground eigenspace may be returned.
pub fn ground_state(h: &PauliHamiltonian) -> Result<StateVector> {
    let eig = dense_eigen(h)?;
    let (idx, _) = argmin(eig.eigenvalues.iter().copied());
    let amps: Vec<Complex64> = eig.eigenvectors.column(idx).iter().copied().collect();
    let mut psi = StateVector::from_amplitudes(amps)?;
    psi.normalize();
    Ok(psi)
}

/// Ground energy by Lanczos iteration on the matrix-free `H|v>` product.
///
/// Iterates until the Ritz residual `beta_m |y_m|` drops below
/// `1e-13 * max(1, |theta|)`, the Krylov space becomes invariant, or it spans
/// the whole space.
pub fn lanczos_ground_energy(h: &PauliHamiltonian) -> Result<f64> {
    let n = h.n_qubits();
    if n > MAX_QUBITS {
        return Err(Error::QubitCountOutOfRange { n, max: MAX_QUBITS });
    }
    let dim = 1usize << n;
    let max_iter = dim.min(2000);
    let zero = Complex64::new(0.0, 0.0);

    // Fixed seed: a random start has overlap with the ground space almost
    // surely, unlike a uniform vector under symmetric Hamiltonians.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1a2c);
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let v_norm = norm(&v);
    scale(&mut v, 1.0 / v_norm);

    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut theta = f64::NAN;

    for m in 0..max_iter {
        let mut w = vec![zero; dim];
        h.apply_into(&v, &mut w);
        let alpha = dot(&v, &w).re;
        axpy(&mut w, -alpha, &v);
        if let (Some(prev), Some(&beta)) = (basis.last(), betas.last()) {
            axpy(&mut w, -beta, prev);
        }
        basis.push(v);
        alphas.push(alpha);
        // Two passes of Gram-Schmidt keep the basis orthogonal to rounding.
        for _ in 0..2 {
            for b in &basis {
                let proj = dot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= proj * bi;
                }
            }
        }
        let beta = norm(&w);

        let (ritz, last_component) = lowest_ritz_pair(&alphas, &betas);
        theta = ritz;
        let residual = beta * last_component.abs();
        if residual <= 1e-13 * theta.abs().max(1.0) || beta <= 1e-14 || m + 1 == dim {
            return Ok(theta);
        }
        betas.push(beta);
        scale(&mut w, 1.0 / beta);
        v = w;
    }
    Err(Error::NoConvergence(format!(
        "Lanczos stopped after {max_iter} iterations at {theta}"
    )))
}

/// Lowest eigenvalue of the tridiagonal matrix and the last component of
/// its eigenvector.
fn lowest_ritz_pair(alphas: &[f64], betas: &[f64]) -> (f64, f64) {
    let m = alphas.len();
    let t = DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            alphas[i]
        } else if i + 1 == j {
            betas[i]
        } else if j + 1 == i {
            betas[j]
        } else {
            0.0
        }
    });
    let eig = t.symmetric_eigen();
    let (idx, value) = argmin(eig.eigenvalues.iter().copied());
    (value, eig.eigenvectors[(m - 1, idx)])
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn scale(a: &mut [Complex64], s: f64) {
    a.iter_mut().for_each(|x| *x *= s);
}

fn axpy(y: &mut [Complex64], a: f64, x: &[Complex64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += xi * a;
    }
}
