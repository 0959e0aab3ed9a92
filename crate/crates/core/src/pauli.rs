//! Hamiltonians as real-weighted sums of Pauli strings.
//!
//! A term `c * P_0 (x) P_1 (x) ... (x) P_{n-1}` acts on a basis state `|k>` as
//! `c * i^{#Y} * (-1)^{popcount(k & zmask)} |k ^ xmask>`, where `xmask` marks
//! the X/Y factors and `zmask` the Z/Y factors. Expectations and products
//! with states use that rule directly and never build a matrix; [`to_dense`]
//! exists for the diagonalization oracle and for tests.
//!
//! # Text format
//!
//! ```text
//! # comment
//! qubits: 2
//! bond_length: 0.735
//! term: -1.0523 II
//! term: 0.3979 ZI
//! ```
//!
//! [`to_dense`]: PauliHamiltonian::to_dense

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, ParseErrorKind, ParseHamiltonianError, Result};
use crate::statevector::StateVector;

/// Largest register a Hamiltonian may declare; masks live in a `u64`.
pub const MAX_HAMILTONIAN_QUBITS: usize = 64;

/// Largest register [`PauliHamiltonian::to_dense`] will materialize.
pub const MAX_DENSE_QUBITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    I,
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Self::I),
            'X' => Some(Self::X),
            'Y' => Some(Self::Y),
            'Z' => Some(Self::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Self::I => 'I',
            Self::X => 'X',
            Self::Y => 'Y',
            Self::Z => 'Z',
        }
    }
}

/// One weighted Pauli string. `axes[q]` acts on qubit `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    coefficient: f64,
    axes: Vec<PauliAxis>,
    flip_mask: u64,
    phase_mask: u64,
    y_count: u32,
}

impl PauliTerm {
    pub fn new(coefficient: f64, axes: Vec<PauliAxis>) -> Result<Self> {
        if !coefficient.is_finite() {
            return Err(Error::NonFinite(format!("term coefficient {coefficient}")));
        }
        if axes.is_empty() || axes.len() > MAX_HAMILTONIAN_QUBITS {
            return Err(Error::QubitCountOutOfRange {
                n: axes.len(),
                max: MAX_HAMILTONIAN_QUBITS,
            });
        }
        let n = axes.len();
        let (mut flip_mask, mut phase_mask, mut y_count) = (0u64, 0u64, 0u32);
        for (q, axis) in axes.iter().enumerate() {
            let bit = 1u64 << (n - 1 - q);
            match axis {
                PauliAxis::I => {}
                PauliAxis::X => flip_mask |= bit,
                PauliAxis::Y => {
                    flip_mask |= bit;
                    phase_mask |= bit;
                    y_count += 1;
                }
                PauliAxis::Z => phase_mask |= bit,
            }
        }
        Ok(Self {
            coefficient,
            axes,
            flip_mask,
            phase_mask,
            y_count,
        })
    }

    /// Parses an axis string such as `"XIZY"`.
    pub fn from_label(coefficient: f64, label: &str) -> Result<Self> {
        let axes = label
            .chars()
            .map(|c| PauliAxis::from_char(c).ok_or(Error::UnknownAxis(c)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coefficient, axes)
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn axes(&self) -> &[PauliAxis] {
        &self.axes
    }

    pub fn n_qubits(&self) -> usize {
        self.axes.len()
    }

    pub fn is_identity(&self) -> bool {
        self.flip_mask == 0 && self.phase_mask == 0
    }

    pub fn label(&self) -> String {
        self.axes.iter().map(|a| a.as_char()).collect()
    }

    /// `i^{#Y}` as a complex unit.
    fn y_phase(&self) -> Complex64 {
        match self.y_count % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// `out[k ^ xmask] += c * phase(k) * input[k]`.
    fn accumulate(&self, input: &[Complex64], out: &mut [Complex64]) {
        let factor = self.y_phase() * self.coefficient;
        let flip = self.flip_mask as usize;
        let phase = self.phase_mask as usize;
        for (k, amp) in input.iter().enumerate() {
            let v = factor * amp;
            if (k & phase).count_ones() & 1 == 0 {
                out[k ^ flip] += v;
            } else {
                out[k ^ flip] -= v;
            }
        }
    }

    /// `<psi|P|psi>` for the bare Pauli string (no coefficient), real part.
    fn pauli_expectation(&self, amps: &[Complex64]) -> f64 {
        let flip = self.flip_mask as usize;
        let phase = self.phase_mask as usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, amp) in amps.iter().enumerate() {
            let v = amps[k ^ flip].conj() * amp;
            if (k & phase).count_ones() & 1 == 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        // Hermitian P: the imaginary residue is rounding noise.
        (self.y_phase() * acc).re
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PauliHamiltonian {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
    bond_length: Option<f64>,
}

impl PauliHamiltonian {
    /// An empty (zero) Hamiltonian on `n_qubits` qubits.
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_HAMILTONIAN_QUBITS {
            return Err(Error::QubitCountOutOfRange {
                n: n_qubits,
                max: MAX_HAMILTONIAN_QUBITS,
            });
        }
        Ok(Self {
            n_qubits,
            terms: Vec::new(),
            bond_length: None,
        })
    }

    pub fn from_terms(n_qubits: usize, terms: Vec<PauliTerm>) -> Result<Self> {
        let mut h = Self::new(n_qubits)?;
        for t in terms {
            h.push_term(t)?;
        }
        Ok(h)
    }

    pub fn with_bond_length(mut self, bond_length: f64) -> Self {
        self.bond_length = Some(bond_length);
        self
    }

    pub fn push_term(&mut self, term: PauliTerm) -> Result<()> {
        if term.n_qubits() != self.n_qubits {
            return Err(Error::QubitCountMismatch {
                expected: self.n_qubits,
                found: term.n_qubits(),
            });
        }
        self.terms.push(term);
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn bond_length(&self) -> Option<f64> {
        self.bond_length
    }

    /// Merges duplicate Pauli strings by summing their coefficients, keeping
    /// first-occurrence order. Expectations are unchanged.
    pub fn normalized(&self) -> Self {
        let mut merged: Vec<PauliTerm> = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            match merged.iter_mut().find(|m| m.axes == t.axes) {
                Some(m) => m.coefficient += t.coefficient,
                None => merged.push(t.clone()),
            }
        }
        Self {
            n_qubits: self.n_qubits,
            terms: merged,
            bond_length: self.bond_length,
        }
    }

    /// `<psi|H|psi> = sum_i c_i <psi|P_i|psi>`, evaluated matrix-free.
    pub fn expectation(&self, psi: &StateVector) -> Result<f64> {
        self.check_state(psi)?;
        let amps = psi.amplitudes();
        let mut norm_sqr = None;
        let mut energy = 0.0;
        for t in &self.terms {
            if t.is_identity() {
                let n2 = *norm_sqr.get_or_insert_with(|| psi.norm_sqr());
                energy += t.coefficient * n2;
            } else {
                energy += t.coefficient * t.pauli_expectation(amps);
            }
        }
        Ok(energy)
    }

    /// `H|psi>` as a single operator application.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        self.check_state(psi)?;
        let mut out = vec![Complex64::new(0.0, 0.0); psi.dim()];
        self.apply_into(psi.amplitudes(), &mut out);
        StateVector::from_amplitudes(out)
    }

    /// Adds `H * input` into `out`. Both slices must have length `2^n`.
    pub(crate) fn apply_into(&self, input: &[Complex64], out: &mut [Complex64]) {
        debug_assert_eq!(input.len(), 1usize << self.n_qubits);
        debug_assert_eq!(out.len(), input.len());
        for t in &self.terms {
            t.accumulate(input, out);
        }
    }

    /// Dense `2^n x 2^n` matrix of `H`; row/column index bits follow the
    /// shared ordering (qubit 0 is the most significant bit).
    pub fn to_dense(&self) -> Result<DMatrix<Complex64>> {
        if self.n_qubits > MAX_DENSE_QUBITS {
            return Err(Error::QubitCountOutOfRange {
                n: self.n_qubits,
                max: MAX_DENSE_QUBITS,
            });
        }
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        for t in &self.terms {
            let factor = t.y_phase() * t.coefficient;
            let flip = t.flip_mask as usize;
            let phase = t.phase_mask as usize;
            for k in 0..dim {
                let sign = if (k & phase).count_ones() & 1 == 0 {
                    1.0
                } else {
                    -1.0
                };
                m[(k ^ flip, k)] += factor * sign;
            }
        }
        Ok(m)
    }

    fn check_state(&self, psi: &StateVector) -> Result<()> {
        if psi.n_qubits() != self.n_qubits {
            return Err(Error::QubitCountMismatch {
                expected: self.n_qubits,
                found: psi.n_qubits(),
            });
        }
        Ok(())
    }
}

/// `<psi|H|psi>`.
pub fn expectation(h: &PauliHamiltonian, psi: &StateVector) -> Result<f64> {
    h.expectation(psi)
}

/// `c * P |psi>` by index permutation and sign, without a dense matrix.
pub fn apply_term(term: &PauliTerm, psi: &StateVector) -> Result<StateVector> {
    if term.n_qubits() != psi.n_qubits() {
        return Err(Error::QubitCountMismatch {
            expected: term.n_qubits(),
            found: psi.n_qubits(),
        });
    }
    let mut out = vec![Complex64::new(0.0, 0.0); psi.dim()];
    term.accumulate(psi.amplitudes(), &mut out);
    StateVector::from_amplitudes(out)
}

pub fn parse_hamiltonian(text: &str) -> Result<PauliHamiltonian, ParseHamiltonianError> {
    let mut hamiltonian: Option<PauliHamiltonian> = None;
    let mut bond_length: Option<f64> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let err = |kind| ParseHamiltonianError {
            line: line_no,
            kind,
        };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| err(ParseErrorKind::Malformed(line.to_string())))?;
        let value = value.trim();
        match key.trim() {
            "qubits" => {
                if hamiltonian.is_some() {
                    return Err(err(ParseErrorKind::DuplicateKey("qubits")));
                }
                let n = value
                    .parse::<usize>()
                    .ok()
                    .filter(|&n| (1..=MAX_HAMILTONIAN_QUBITS).contains(&n))
                    .ok_or_else(|| err(ParseErrorKind::InvalidQubits(value.to_string())))?;
                hamiltonian = Some(PauliHamiltonian::new(n).expect("qubit count checked"));
            }
            "bond_length" => {
                if bond_length.is_some() {
                    return Err(err(ParseErrorKind::DuplicateKey("bond_length")));
                }
                bond_length = Some(parse_real(value).map_err(err)?);
            }
            "term" => {
                let h = hamiltonian
                    .as_mut()
                    .ok_or_else(|| err(ParseErrorKind::MissingHeader))?;
                let mut fields = value.split_whitespace();
                let (coef, axes) = match (fields.next(), fields.next(), fields.next()) {
                    (Some(c), Some(a), None) => (c, a),
                    _ => return Err(err(ParseErrorKind::MalformedTerm(value.to_string()))),
                };
                let coefficient = parse_real(coef).map_err(err)?;
                let axes = axes
                    .chars()
                    .map(|c| PauliAxis::from_char(c).ok_or(ParseErrorKind::UnknownAxis(c)))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(err)?;
                if axes.len() != h.n_qubits {
                    return Err(err(ParseErrorKind::AxisLength {
                        expected: h.n_qubits,
                        found: axes.len(),
                    }));
                }
                let term = PauliTerm::new(coefficient, axes).expect("term validated");
                h.terms.push(term);
            }
            other => return Err(err(ParseErrorKind::UnknownKey(other.to_string()))),
        }
    }

    let mut h = hamiltonian.ok_or(ParseHamiltonianError {
        line: last_line.max(1),
        kind: ParseErrorKind::MissingHeader,
    })?;
    h.bond_length = bond_length;
    Ok(h)
}

fn parse_real(s: &str) -> Result<f64, ParseErrorKind> {
    // `f64::from_str` also accepts "inf"/"nan"; only finite reals pass.
    let v: f64 = s
        .parse()
        .map_err(|_| ParseErrorKind::InvalidNumber(s.to_string()))?;
    if !v.is_finite() {
        return Err(ParseErrorKind::NonFiniteNumber(s.to_string()));
    }
    Ok(v)
}

/// Canonical text form; [`parse_hamiltonian`] reads it back exactly.
pub fn format_hamiltonian(h: &PauliHamiltonian) -> String {
    h.to_string()
}

impl fmt::Display for PauliHamiltonian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits: {}", self.n_qubits)?;
        if let Some(a) = self.bond_length {
            // `{:?}` is the shortest representation that round-trips.
            writeln!(f, "bond_length: {a:?}")?;
        }
        for t in &self.terms {
            writeln!(f, "term: {:?} {}", t.coefficient, t.label())?;
        }
        Ok(())
    }
}

impl FromStr for PauliHamiltonian {
    type Err = ParseHamiltonianError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_hamiltonian(s)
    }
}
