//! The layered hybrid network.
//!
//! With intermediate measurements the block sequence is
//! `Encode(x1) -> PQC(n layers) -> Measure -> Encode(x pi) -> PQC(n layers)`:
//! the bond length `a` is encoded on every qubit as `Ry(a) H |0>`, the first
//! circuit runs, each qubit's `<Z>` is read out exactly, and those values
//! `b_i` are re-encoded from a fresh `|0...0>` as `Ry(pi * b_i) H |0>`
//! before the second circuit. The ablation drops the measurement and the
//! second encoding and runs a single circuit of `2n` layers, so both
//! variants consume `2 n^2` parameters.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::statevector::StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    WithIntermediateMeasurements,
    WithoutIntermediateMeasurements,
}

impl Variant {
    pub const ALL: [Variant; 2] = [
        Variant::WithIntermediateMeasurements,
        Variant::WithoutIntermediateMeasurements,
    ];

    /// Short name used in configs, file names and tables.
    pub fn name(self) -> &'static str {
        match self {
            Variant::WithIntermediateMeasurements => "with-measurements",
            Variant::WithoutIntermediateMeasurements => "without-measurements",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "with-measurements" | "with" => Ok(Variant::WithIntermediateMeasurements),
            "without-measurements" | "without" => Ok(Variant::WithoutIntermediateMeasurements),
            other => Err(format!(
                "unknown variant `{other}` (expected `with-measurements` or `without-measurements`)"
            )),
        }
    }
}

/// Scale applied to each input before it becomes an Ry angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EncodingSpec {
    scale: f64,
}

impl EncodingSpec {
    pub fn new(scale: f64) -> Result<Self> {
        if !scale.is_finite() || scale == 0.0 {
            return Err(Error::InvalidScale(scale));
        }
        Ok(Self { scale })
    }

    /// Raw bond lengths used directly as angles.
    pub fn raw() -> Self {
        Self { scale: 1.0 }
    }

    /// Measured `<Z>` values mapped from `[-1, 1]` to `[-pi, pi]`.
    pub fn measured() -> Self {
        Self { scale: PI }
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }
}

/// A circuit block: `n_layers` repetitions of CNOT ladder then Ry column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PqcSpec {
    pub n_qubits: usize,
    pub n_layers: usize,
    pub param_offset: usize,
}

impl PqcSpec {
    pub fn n_params(&self) -> usize {
        self.n_qubits * self.n_layers
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Block {
    Encode(EncodingSpec),
    Pqc(PqcSpec),
    Measure,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkSpec {
    n_qubits: usize,
    variant: Variant,
    blocks: Vec<Block>,
}

impl NetworkSpec {
    pub fn new(n_qubits: usize, variant: Variant) -> Result<Self> {
        // Validate the register size up front so forward() cannot fail on it.
        StateVector::zero(n_qubits)?;
        let n = n_qubits;
        let blocks = match variant {
            Variant::WithIntermediateMeasurements => vec![
                Block::Encode(EncodingSpec::raw()),
                Block::Pqc(PqcSpec {
                    n_qubits: n,
                    n_layers: n,
                    param_offset: 0,
                }),
                Block::Measure,
                Block::Encode(EncodingSpec::measured()),
                Block::Pqc(PqcSpec {
                    n_qubits: n,
                    n_layers: n,
                    param_offset: n * n,
                }),
            ],
            Variant::WithoutIntermediateMeasurements => vec![
                Block::Encode(EncodingSpec::raw()),
                Block::Pqc(PqcSpec {
                    n_qubits: n,
                    n_layers: 2 * n,
                    param_offset: 0,
                }),
            ],
        };
        Ok(Self {
            n_qubits,
            variant,
            blocks,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Total trainable angles, `2 n^2` for either variant.
    pub fn n_params(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| match b {
                Block::Pqc(p) => p.n_params(),
                _ => 0,
            })
            .sum()
    }

    /// Runs the block sequence for one bond length and returns the final state.
    pub fn forward(&self, bond_length: f64, params: &[f64]) -> Result<StateVector> {
        let k = self.n_params();
        if params.len() != k {
            return Err(Error::ParameterLength {
                expected: k,
                found: params.len(),
            });
        }
        let mut inputs = vec![bond_length; self.n_qubits];
        let mut state: Option<StateVector> = None;
        for block in &self.blocks {
            match block {
                Block::Encode(spec) => state = Some(apply_encoding(spec, &inputs)?),
                Block::Pqc(spec) => {
                    let psi = state.as_mut().expect("circuit block follows an encoding");
                    apply_pqc(psi, spec, params)?;
                }
                Block::Measure => {
                    let psi = state.take().expect("measurement follows a circuit");
                    inputs = measure_layer(&psi);
                }
            }
        }
        Ok(state.expect("block sequence ends in a circuit"))
    }
}

/// Trainable rotation angles in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterVector(Vec<f64>);

impl ParameterVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ParameterVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for ParameterVector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// CNOT pairs of one entangling layer: the chain starting at qubit 0
/// (`(0,1), (2,3), ...`) followed by the chain starting at qubit 1
/// (`(1,2), (3,4), ...`).
pub fn entangler_pattern(n: usize) -> Vec<(usize, usize)> {
    let even = (0..n.saturating_sub(1)).step_by(2).map(|i| (i, i + 1));
    let odd = (1..n.saturating_sub(1)).step_by(2).map(|i| (i, i + 1));
    even.chain(odd).collect()
}

/// `(x)_i Ry(scale * inputs[i]) H |0>`.
pub fn apply_encoding(spec: &EncodingSpec, inputs: &[f64]) -> Result<StateVector> {
    let mut psi = StateVector::zero(inputs.len())?;
    for (q, &x) in inputs.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::NonFinite(format!("encoding input {q} = {x}")));
        }
        psi.apply_h(q)?;
        psi.apply_ry(q, spec.scale * x)?;
    }
    Ok(psi)
}

/// Applies the circuit block in place. Layer `j` uses angles
/// `params[offset + i + n * j]` for qubit `i`.
pub fn apply_pqc(psi: &mut StateVector, spec: &PqcSpec, params: &[f64]) -> Result<()> {
    if psi.n_qubits() != spec.n_qubits {
        return Err(Error::QubitCountMismatch {
            expected: spec.n_qubits,
            found: psi.n_qubits(),
        });
    }
    let end = spec.param_offset + spec.n_params();
    if params.len() < end {
        return Err(Error::ParameterLength {
            expected: end,
            found: params.len(),
        });
    }
    let n = spec.n_qubits;
    let pattern = entangler_pattern(n);
    for layer in params[spec.param_offset..end].chunks_exact(n) {
        for &(control, target) in &pattern {
            psi.apply_cnot(control, target)?;
        }
        for (q, &w) in layer.iter().enumerate() {
            psi.apply_ry(q, w)?;
        }
    }
    Ok(())
}

/// Exact per-qubit `<Z>`, the network's classical layer.
pub fn measure_layer(psi: &StateVector) -> Vec<f64> {
    psi.expect_z_all()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn entangler_patterns() {
        assert_eq!(entangler_pattern(4), vec![(0, 1), (2, 3), (1, 2)]);
        assert_eq!(entangler_pattern(3), vec![(0, 1), (1, 2)]);
        assert_eq!(entangler_pattern(2), vec![(0, 1)]);
        assert_eq!(entangler_pattern(1), vec![]);
        // even n: even chain ends at (n-2, n-1), odd chain at (n-3, n-2)
        let p8 = entangler_pattern(8);
        assert_eq!(p8[3], (6, 7));
        assert_eq!(*p8.last().unwrap(), (5, 6));
        // odd n: even chain ends at (n-3, n-2), odd chain at (n-2, n-1)
        let p7 = entangler_pattern(7);
        assert_eq!(p7[2], (4, 5));
        assert_eq!(*p7.last().unwrap(), (5, 6));
        assert_eq!(p7.len(), 6);
    }

    #[test]
    fn parameter_counts() {
        for variant in Variant::ALL {
            assert_eq!(NetworkSpec::new(4, variant).unwrap().n_params(), 32);
            assert_eq!(NetworkSpec::new(8, variant).unwrap().n_params(), 128);
            assert_eq!(NetworkSpec::new(3, variant).unwrap().n_params(), 18);
        }
    }

    #[test]
    fn encoding_zero_inputs_is_plus_state() {
        let psi = apply_encoding(&EncodingSpec::raw(), &[0.0; 3]).unwrap();
        let amp = 1.0 / 8f64.sqrt();
        for a in psi.amplitudes() {
            assert!((a - Complex64::new(amp, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn encoding_single_qubit_expectation() {
        for a in [-2.0, 0.3, 1.7] {
            let psi = apply_encoding(&EncodingSpec::raw(), &[a]).unwrap();
            assert!((psi.expect_z(0).unwrap() + f64::sin(a)).abs() < 1e-15);
        }
    }

    #[test]
    fn encoding_measured_scale_at_one() {
        // Ry(pi)|+> = (-|0> + |1>)/sqrt(2)
        let psi = apply_encoding(&EncodingSpec::measured(), &[1.0]).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((psi.amplitudes()[0] - Complex64::new(-r, 0.0)).norm() < 1e-15);
        assert!((psi.amplitudes()[1] - Complex64::new(r, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn encoding_rejects_bad_scale_and_inputs() {
        assert!(EncodingSpec::new(0.0).is_err());
        assert!(EncodingSpec::new(f64::NAN).is_err());
        assert!(apply_encoding(&EncodingSpec::raw(), &[f64::INFINITY]).is_err());
    }

    #[test]
    fn pqc_hand_trace() {
        // CNOT(0,1) leaves |00> alone, then Ry(pi) on qubit 0 gives |10>.
        let mut psi = StateVector::zero(2).unwrap();
        let spec = PqcSpec {
            n_qubits: 2,
            n_layers: 1,
            param_offset: 0,
        };
        apply_pqc(&mut psi, &spec, &[std::f64::consts::PI, 0.0]).unwrap();
        let amps = psi.amplitudes();
        assert!((amps[2] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(amps[0].norm() < 1e-15 && amps[1].norm() < 1e-15 && amps[3].norm() < 1e-15);
    }

    #[test]
    fn pqc_parameter_underflow() {
        let mut psi = StateVector::zero(2).unwrap();
        let spec = PqcSpec {
            n_qubits: 2,
            n_layers: 2,
            param_offset: 1,
        };
        assert_eq!(
            apply_pqc(&mut psi, &spec, &[0.0; 4]),
            Err(Error::ParameterLength {
                expected: 5,
                found: 4
            })
        );
    }

    #[test]
    fn measure_layer_examples() {
        assert_eq!(measure_layer(&StateVector::zero(3).unwrap()), vec![1.0; 3]);
        let plus = apply_encoding(&EncodingSpec::raw(), &[0.0; 2]).unwrap();
        assert!(measure_layer(&plus).iter().all(|z| z.abs() < 1e-15));
        let mut bell = StateVector::zero(2).unwrap();
        bell.apply_h(0).unwrap();
        bell.apply_cnot(0, 1).unwrap();
        assert!(measure_layer(&bell).iter().all(|z| z.abs() < 1e-15));
    }

    #[test]
    fn forward_zero_params_hand_trace() {
        let net = NetworkSpec::new(2, Variant::WithIntermediateMeasurements).unwrap();
        let psi = net.forward(0.0, &[0.0; 8]).unwrap();
        assert!(measure_layer(&psi).iter().all(|z| z.abs() < 1e-15));
        assert!((psi.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn forward_rejects_wrong_length() {
        let net = NetworkSpec::new(2, Variant::WithoutIntermediateMeasurements).unwrap();
        assert_eq!(
            net.forward(0.5, &[0.0; 7]),
            Err(Error::ParameterLength {
                expected: 8,
                found: 7
            })
        );
    }

    #[test]
    fn variant_names_round_trip() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
        assert!("sideways".parse::<Variant>().is_err());
    }
}
