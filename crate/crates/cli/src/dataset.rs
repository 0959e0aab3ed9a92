//! Loading `.ham` files into a bond-length-ordered curve.

use std::fs;
use std::path::{Path, PathBuf};

use hqnn::{parse_hamiltonian, PauliHamiltonian};

use crate::error::{CliError, Result};

/// Two bond lengths closer than this are the same point.
pub const BOND_LENGTH_TOLERANCE: f64 = 1e-9;

/// `(bond length, Hamiltonian)` pairs, strictly increasing in bond length.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveDataset {
    entries: Vec<(f64, PauliHamiltonian)>,
}

impl CurveDataset {
    pub fn entries(&self) -> &[(f64, PauliHamiltonian)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(f64, PauliHamiltonian)> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Shared qubit count; `None` for an empty dataset.
    pub fn n_qubits(&self) -> Option<usize> {
        self.entries.first().map(|(_, h)| h.n_qubits())
    }
}

/// Every `.ham` file in `dir` that carries a `bond_length`, in file-name order.
/// Files without the metadata line are skipped; unparsable files are errors.
pub fn scan_dir(dir: &Path) -> Result<Vec<(PathBuf, PauliHamiltonian)>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "ham") && p.is_file())
        .collect();
    paths.sort();
    let mut out = Vec::with_capacity(paths.len());
    for path in paths {
        let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
        let h = parse_hamiltonian(&text)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        if h.bond_length().is_some() {
            out.push((path, h));
        }
    }
    Ok(out)
}

/// Matches each requested bond length to exactly one file in `dir`.
pub fn load_dataset(dir: &Path, bond_lengths: &[f64]) -> Result<CurveDataset> {
    let available = if bond_lengths.is_empty() {
        Vec::new()
    } else {
        scan_dir(dir)?
    };
    let mut entries = Vec::with_capacity(bond_lengths.len());
    for &a in bond_lengths {
        let mut matches = available.iter().filter(|(_, h)| {
            h.bond_length()
                .is_some_and(|b| (a - b).abs() <= BOND_LENGTH_TOLERANCE)
        });
        let (path, h) = matches.next().ok_or_else(|| {
            CliError::Data(format!(
                "no Hamiltonian with bond_length {a} in {}",
                dir.display()
            ))
        })?;
        if let Some((other, _)) = matches.next() {
            return Err(CliError::Data(format!(
                "bond length {a} matches both {} and {}",
                path.display(),
                other.display()
            )));
        }
        entries.push((a, h.clone()));
    }
    from_entries(entries)
}

/// Every bond-length-tagged file in `dir`.
pub fn load_all(dir: &Path) -> Result<CurveDataset> {
    let entries = scan_dir(dir)?
        .into_iter()
        .map(|(_, h)| (h.bond_length().expect("scan keeps tagged files"), h))
        .collect();
    from_entries(entries)
}

fn from_entries(mut entries: Vec<(f64, PauliHamiltonian)>) -> Result<CurveDataset> {
    entries.sort_by(|x, y| x.0.total_cmp(&y.0));
    if let Some(w) = entries
        .windows(2)
        .find(|w| w[1].0 - w[0].0 <= BOND_LENGTH_TOLERANCE)
    {
        return Err(CliError::Data(format!(
            "bond length {} appears more than once",
            w[1].0
        )));
    }
    if let Some((first, rest)) = entries.split_first() {
        let n = first.1.n_qubits();
        if let Some((a, h)) = rest.iter().find(|(_, h)| h.n_qubits() != n) {
            return Err(CliError::Data(format!(
                "inconsistent qubit counts: {n} at bond length {} but {} at {a}",
                first.0,
                h.n_qubits()
            )));
        }
    }
    Ok(CurveDataset { entries })
}
