//! Matrix-free n-qubit statevector simulation.
//!
//! Amplitude index bit `n - 1 - q` holds qubit `q`, so qubit 0 is the most
//! significant bit. Single-qubit kernels walk the register in blocks of
//! `2 * stride` and pair index `i` with `i + stride`, keeping the inner loop
//! stride-1.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest register the simulator will allocate.
pub const MAX_QUBITS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Wraps raw amplitudes without normalizing them.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        let n_qubits = len.trailing_zeros() as usize;
        check_qubit_count(n_qubits)?;
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Euclidean norm of the amplitude vector.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_same_size(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Scales the amplitudes to unit norm. A zero vector is left untouched.
    pub fn normalize(&mut self) {
        let norm = self.norm();
        if norm > 0.0 {
            let inv = 1.0 / norm;
            self.amplitudes.iter_mut().for_each(|a| *a *= inv);
        }
    }

    /// Index mask of qubit `q`.
    pub fn qubit_mask(&self, q: usize) -> Result<usize> {
        if q >= self.n_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                n_qubits: self.n_qubits,
            });
        }
        Ok(1 << (self.n_qubits - 1 - q))
    }

    pub fn apply_h(&mut self, q: usize) -> Result<()> {
        let stride = self.qubit_mask(q)?;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for_each_pair(&mut self.amplitudes, stride, |a0, a1| {
            let (x, y) = (*a0, *a1);
            *a0 = (x + y) * s;
            *a1 = (x - y) * s;
        });
        Ok(())
    }

    /// `Rx(theta) = exp(-i theta X / 2)`.
    pub fn apply_rx(&mut self, q: usize, theta: f64) -> Result<()> {
        let stride = self.qubit_mask(q)?;
        let (s, c) = (theta / 2.0).sin_cos();
        let mis = Complex64::new(0.0, -s);
        for_each_pair(&mut self.amplitudes, stride, |a0, a1| {
            let (x, y) = (*a0, *a1);
            *a0 = x * c + y * mis;
            *a1 = x * mis + y * c;
        });
        Ok(())
    }

    /// `Ry(theta) = exp(-i theta Y / 2) = [[cos, -sin], [sin, cos]]` of `theta / 2`.
    pub fn apply_ry(&mut self, q: usize, theta: f64) -> Result<()> {
        let stride = self.qubit_mask(q)?;
        let (s, c) = (theta / 2.0).sin_cos();
        for_each_pair(&mut self.amplitudes, stride, |a0, a1| {
            let (x, y) = (*a0, *a1);
            *a0 = x * c - y * s;
            *a1 = x * s + y * c;
        });
        Ok(())
    }

    /// `Rz(theta) = diag(exp(-i theta / 2), exp(i theta / 2))`.
    pub fn apply_rz(&mut self, q: usize, theta: f64) -> Result<()> {
        let stride = self.qubit_mask(q)?;
        let lo = Complex64::from_polar(1.0, -theta / 2.0);
        let hi = Complex64::from_polar(1.0, theta / 2.0);
        for_each_pair(&mut self.amplitudes, stride, |a0, a1| {
            *a0 *= lo;
            *a1 *= hi;
        });
        Ok(())
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        if control == target {
            return Err(Error::SameQubit(control));
        }
        let cmask = self.qubit_mask(control)?;
        let tmask = self.qubit_mask(target)?;
        for i in 0..self.amplitudes.len() {
            if i & cmask != 0 && i & tmask == 0 {
                self.amplitudes.swap(i, i | tmask);
            }
        }
        Ok(())
    }

    /// `<Z_q>`: weight with qubit `q` clear minus weight with it set.
    pub fn expect_z(&self, q: usize) -> Result<f64> {
        let mask = self.qubit_mask(q)?;
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if i & mask == 0 {
                    a.norm_sqr()
                } else {
                    -a.norm_sqr()
                }
            })
            .sum())
    }

    /// `<Z_q>` for every qubit in a single sweep.
    pub fn expect_z_all(&self) -> Vec<f64> {
        let n = self.n_qubits;
        let mut out = vec![0.0; n];
        for (i, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            for (q, acc) in out.iter_mut().enumerate() {
                if i & (1 << (n - 1 - q)) == 0 {
                    *acc += p;
                } else {
                    *acc -= p;
                }
            }
        }
        out
    }

    fn check_same_size(&self, other: &StateVector) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitCountMismatch {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        Ok(())
    }
}

fn check_qubit_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCountOutOfRange { n, max: MAX_QUBITS });
    }
    Ok(())
}

#[inline]
fn for_each_pair<F>(amps: &mut [Complex64], stride: usize, mut f: F)
where
    F: FnMut(&mut Complex64, &mut Complex64),
{
    for block in amps.chunks_exact_mut(2 * stride) {
        let (lo, hi) = block.split_at_mut(stride);
        for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
            f(a0, a1);
        }
    }
}
