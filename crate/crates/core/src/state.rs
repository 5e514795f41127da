use num_complex::Complex64;

use crate::error::{guard_qubits, Error, Result};
use crate::pauli::PauliString;

/// Tolerance on ‖ψ‖ accepted when constructing a state.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Normalized register state, amplitudes indexed with qubit 0 as the top bit.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized.
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let s = Self::unchecked(n_qubits, amplitudes)?;
        let norm = s.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::validation(format!("state norm {norm} is not 1")));
        }
        Ok(s)
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let mut s = Self::unchecked(n_qubits, amplitudes)?;
        let norm = s.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::validation("cannot normalize a zero or non-finite vector"));
        }
        s.amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(s)
    }

    fn unchecked(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        guard_qubits(n_qubits)?;
        if amplitudes.len() != 1 << n_qubits {
            return Err(Error::validation(format!(
                "{} amplitudes do not fit {n_qubits} qubits",
                amplitudes.len()
            )));
        }
        Ok(Self { n_qubits, amplitudes })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        guard_qubits(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::validation(format!("basis index {index} outside dimension {dim}")));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amplitudes })
    }

    /// Basis state with the listed 0-based qubits set to `|1⟩`.
    pub fn with_ones(n_qubits: usize, qubits: &[usize]) -> Result<Self> {
        let mut index = 0usize;
        for &q in qubits {
            if q >= n_qubits {
                return Err(Error::validation(format!("qubit {q} outside a {n_qubits}-qubit register")));
            }
            index |= 1 << (n_qubits - 1 - q);
        }
        Self::basis(n_qubits, index)
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

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::validation(format!(
                "inner product of {}-qubit and {}-qubit states",
                self.n_qubits, other.n_qubits
            )));
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn population(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }

    /// `⟨Σ(I + Z)/2⟩`: the expected number of qubits in `|0⟩`, which is the
    /// fermion number under the Jordan–Wigner convention of [`crate::hubbard`].
    pub fn mean_occupation(&self) -> f64 {
        let n = self.n_qubits as f64;
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(x, a)| (n - x.count_ones() as f64) * a.norm_sqr())
            .sum()
    }

    /// Applies `exp(−i·angle·P)` in place.
    ///
    /// The string's coefficient must be real; it scales the angle.
    pub fn apply_pauli_rotation(&mut self, p: &PauliString, angle: f64) -> Result<()> {
        if p.n_qubits() != self.n_qubits {
            return Err(Error::validation("rotation generator does not match register size"));
        }
        let coeff = p.coefficient();
        if coeff.im != 0.0 {
            return Err(Error::validation("rotation generator must have a real coefficient"));
        }
        let theta = angle * coeff.re;
        let (s, c) = theta.sin_cos();
        let act = p.action();
        let amps = &mut self.amplitudes;
        let minus_is = Complex64::new(0.0, -s);
        if act.flip == 0 {
            for (x, a) in amps.iter_mut().enumerate() {
                let phase = act.y_phase * act.sign(x);
                *a *= c + minus_is * phase;
            }
            return Ok(());
        }
        let top = 1usize << (usize::BITS - 1 - act.flip.leading_zeros());
        for x in 0..amps.len() {
            if x & top != 0 {
                continue;
            }
            let y = x ^ act.flip;
            // P|x⟩ = ph_x |y⟩ and P|y⟩ = ph_y |x⟩
            let ph_x = act.y_phase * act.sign(x);
            let ph_y = act.y_phase * act.sign(y);
            let (ax, ay) = (amps[x], amps[y]);
            amps[x] = c * ax + minus_is * ph_y * ay;
            amps[y] = c * ay + minus_is * ph_x * ax;
        }
        Ok(())
    }
}

/// `|⟨a|b⟩|²`, insensitive to global phase.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().min(1.0))
}
