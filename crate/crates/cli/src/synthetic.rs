//! Transverse-field Ising chains as a stand-in curve family.
//!
//! `H(a) = -sum_i Z_i Z_{i+1} - a sum_i X_i` on an open chain, one file per
//! value of `a`. The field strength plays the role of the bond length.

use std::fs;
use std::path::{Path, PathBuf};

use hqnn::{format_hamiltonian, PauliAxis, PauliHamiltonian, PauliTerm};

use crate::error::{CliError, Result};

/// Default grid: 0.2, 0.4, ..., 2.0.
pub fn default_grid() -> Vec<f64> {
    (1..=10).map(|i| i as f64 / 5.0).collect()
}

pub fn tfim_hamiltonian(n_qubits: usize, field: f64) -> hqnn::Result<PauliHamiltonian> {
    let mut h = PauliHamiltonian::new(n_qubits)?;
    for i in 0..n_qubits.saturating_sub(1) {
        let mut axes = vec![PauliAxis::I; n_qubits];
        axes[i] = PauliAxis::Z;
        axes[i + 1] = PauliAxis::Z;
        h.push_term(PauliTerm::new(-1.0, axes)?)?;
    }
    for i in 0..n_qubits {
        let mut axes = vec![PauliAxis::I; n_qubits];
        axes[i] = PauliAxis::X;
        h.push_term(PauliTerm::new(-field, axes)?)?;
    }
    Ok(h.with_bond_length(field))
}

/// Writes one `.ham` file per bond length into `dir` and returns the paths.
pub fn gen_synthetic(dir: &Path, n_qubits: usize, bond_lengths: &[f64]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut paths = Vec::with_capacity(bond_lengths.len());
    for &a in bond_lengths {
        let h = tfim_hamiltonian(n_qubits, a)
            .map_err(|e| CliError::Usage(format!("synthetic family: {e}")))?;
        let path = dir.join(format!("tfim_n{n_qubits}_a{a}.ham"));
        let text = format!(
            "# transverse-field Ising chain, n = {n_qubits}, field = {a}\n{}",
            format_hamiltonian(&h)
        );
        fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        paths.push(path);
    }
    Ok(paths)
}
