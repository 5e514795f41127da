//! Harmonically driven Hamiltonians and their fixed-step RK4 propagation.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::HermitianOperator;
use crate::pauli::{PauliString, PauliSum};
use crate::state::StateVector;

/// Largest norm drift that RK4 may silently renormalize away.
pub const NORM_DRIFT_LIMIT: f64 = 1e-6;

/// Minimum number of steps per period of the fastest frequency present.
pub const STEPS_PER_PERIOD: f64 = 20.0;

/// One `A·cos(ν t + φ)` component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tone {
    pub amplitude: f64,
    /// rad/ns
    pub frequency: f64,
    /// rad
    pub phase: f64,
}

/// `constant + Σ A_k cos(ν_k t + φ_k)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HarmonicCoefficient {
    pub constant: f64,
    pub tones: Vec<Tone>,
}

impl HarmonicCoefficient {
    pub fn constant(value: f64) -> Self {
        Self { constant: value, tones: Vec::new() }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.constant
            + self.tones.iter().map(|k| k.amplitude * (k.frequency * t + k.phase).cos()).sum::<f64>()
    }

    /// Upper bound on the modulus of the coefficient.
    pub fn peak(&self) -> f64 {
        self.constant.abs() + self.tones.iter().map(|k| k.amplitude.abs()).sum::<f64>()
    }

    pub fn max_frequency(&self) -> f64 {
        self.tones
            .iter()
            .filter(|k| k.amplitude != 0.0)
            .fold(0.0, |m, k| m.max(k.frequency.abs()))
    }
}

/// `H(t) = Σ_k c_k(t)·P_k` with unit-weight Pauli strings `P_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeDependentHamiltonian {
    n_qubits: usize,
    terms: Vec<(PauliString, HarmonicCoefficient)>,
}

impl TimeDependentHamiltonian {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, terms: Vec::new() }
    }

    pub fn push(&mut self, string: PauliString, coefficient: HarmonicCoefficient) -> Result<()> {
        if string.n_qubits() != self.n_qubits {
            return Err(Error::validation("term does not match register size"));
        }
        if string.coefficient() != Complex64::new(1.0, 0.0) {
            return Err(Error::validation("time-dependent terms need unit-weight strings"));
        }
        self.terms.push((string, coefficient));
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(PauliString, HarmonicCoefficient)] {
        &self.terms
    }

    /// Instantaneous operator `H(t)`.
    pub fn at(&self, t: f64) -> Result<HermitianOperator> {
        let mut sum = PauliSum::new(self.n_qubits);
        for (p, c) in &self.terms {
            sum.push(p.clone().scaled(c.eval(t)))?;
        }
        HermitianOperator::from_pauli_sum(&sum)
    }

    /// Static part (all tones dropped).
    pub fn constant_part(&self) -> Result<HermitianOperator> {
        let mut sum = PauliSum::new(self.n_qubits);
        for (p, c) in &self.terms {
            sum.push(p.clone().scaled(c.constant))?;
        }
        HermitianOperator::from_pauli_sum(&sum)
    }

    /// Fastest angular frequency in the problem: drive tones, and the level
    /// splitting `2|c|` of each term taken at its peak.
    pub fn max_frequency(&self) -> f64 {
        self.terms
            .iter()
            .fold(0.0, |m, (_, c)| m.max(c.max_frequency()).max(2.0 * c.peak()))
    }

    /// Writes `−i·H(t)·ψ` into `out`.
    fn derivative(&self, t: f64, psi: &[Complex64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        for (p, c) in &self.terms {
            let w = c.eval(t);
            if w != 0.0 {
                p.accumulate(Complex64::new(0.0, -w), psi, out);
            }
        }
    }
}

/// Largest step accepted by [`evolve_harmonic`] for this Hamiltonian.
pub fn max_step(h: &TimeDependentHamiltonian) -> f64 {
    let nu = h.max_frequency();
    if nu == 0.0 {
        f64::INFINITY
    } else {
        TAU / nu / STEPS_PER_PERIOD
    }
}

/// Classical RK4 propagation of `i dψ/dt = H(t)ψ` from `t0` to `t1`.
///
/// The interval is split into the smallest number of equal steps no longer
/// than `dt`. Accumulated norm drift below [`NORM_DRIFT_LIMIT`] is removed by
/// renormalizing; larger drift is reported as a step-size error.
pub fn evolve_harmonic(
    h: &TimeDependentHamiltonian,
    t0: f64,
    t1: f64,
    psi: &StateVector,
    dt: f64,
) -> Result<StateVector> {
    if psi.n_qubits() != h.n_qubits() {
        return Err(Error::validation("Hamiltonian and state sizes differ"));
    }
    if !(dt > 0.0) {
        return Err(Error::validation(format!("time step must be positive, got {dt}")));
    }
    if !(t1 >= t0) {
        return Err(Error::validation("integration interval must run forward in time"));
    }
    let ceiling = max_step(h);
    if dt > ceiling * (1.0 + 1e-12) {
        return Err(Error::StepSize(format!(
            "dt = {dt} ns exceeds the ceiling {ceiling} ns (20 steps per fastest period)"
        )));
    }
    if t1 == t0 {
        return Ok(psi.clone());
    }
    let steps = ((t1 - t0) / dt).ceil().max(1.0) as usize;
    let step = (t1 - t0) / steps as f64;
    let dim = psi.dim();
    let zero = Complex64::new(0.0, 0.0);
    let mut y = psi.amplitudes().to_vec();
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) =
        (vec![zero; dim], vec![zero; dim], vec![zero; dim], vec![zero; dim], vec![zero; dim]);
    for s in 0..steps {
        let t = t0 + s as f64 * step;
        h.derivative(t, &y, &mut k1);
        axpy(&y, 0.5 * step, &k1, &mut tmp);
        h.derivative(t + 0.5 * step, &tmp, &mut k2);
        axpy(&y, 0.5 * step, &k2, &mut tmp);
        h.derivative(t + 0.5 * step, &tmp, &mut k3);
        axpy(&y, step, &k3, &mut tmp);
        h.derivative(t + step, &tmp, &mut k4);
        for i in 0..dim {
            y[i] += (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (step / 6.0);
        }
    }
    let norm = y.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() >= NORM_DRIFT_LIMIT {
        return Err(Error::StepSize(format!(
            "norm drifted to {norm} over {steps} steps of {step} ns; use a smaller dt"
        )));
    }
    StateVector::normalized(psi.n_qubits(), y)
}

fn axpy(y: &[Complex64], a: f64, x: &[Complex64], out: &mut [Complex64]) {
    for ((o, yi), xi) in out.iter_mut().zip(y).zip(x) {
        *o = yi + xi * a;
    }
}
