//! Driven spin chain: lab-frame and rotating-wave Hamiltonians, and the table
//! of drive phases that selects each two-local interaction.
//!
//! Links and qubits are 1-based: link `j` couples qubits `j` and `j + 1`.
//! Odd qubits sit at `ω_odd`, even qubits at `ω_even`; every link is driven at
//! `ν₁ = ω_odd − ω_even` (exchange) and `ν₂ = ω_odd + ω_even` (pair creation).

use std::collections::BTreeSet;

use crate::circuit::LinkCoupling;
use crate::error::{Error, Result};
use crate::evolve::{evolve_harmonic, HarmonicCoefficient, TimeDependentHamiltonian, Tone};
use crate::operator::HermitianOperator;
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::phase::PiPhase;
use crate::state::StateVector;

/// Qubit count above which [`rwa_deviation`] refuses to integrate the lab frame.
pub const LAB_FRAME_QUBIT_BUDGET: usize = 3;

/// Relative tolerance when checking a drive tone against its resonance.
const RESONANCE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    n_qubits: usize,
    omega_odd: f64,
    omega_even: f64,
    links: Vec<LinkCoupling>,
}

impl ChainSpec {
    pub fn new(n_qubits: usize, omega_odd: f64, omega_even: f64, links: Vec<LinkCoupling>) -> Result<Self> {
        if n_qubits < 2 {
            return Err(Error::validation("a chain needs at least two qubits"));
        }
        if links.len() != n_qubits - 1 {
            return Err(Error::validation(format!(
                "{} link couplings given for a {n_qubits}-qubit chain",
                links.len()
            )));
        }
        if !omega_odd.is_finite() || !omega_even.is_finite() {
            return Err(Error::validation("qubit frequencies must be finite"));
        }
        Ok(Self { n_qubits, omega_odd, omega_even, links })
    }

    pub fn uniform(n_qubits: usize, omega_odd: f64, omega_even: f64, link: LinkCoupling) -> Result<Self> {
        Self::new(n_qubits, omega_odd, omega_even, vec![link; n_qubits.saturating_sub(1)])
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Frequency of 1-based qubit `q`.
    pub fn omega(&self, q: usize) -> f64 {
        if q % 2 == 1 {
            self.omega_odd
        } else {
            self.omega_even
        }
    }

    /// `ω_odd − ω_even`, the exchange resonance.
    pub fn detuning(&self) -> f64 {
        self.omega_odd - self.omega_even
    }

    /// `ω_odd + ω_even`, the pair-creation resonance.
    pub fn frequency_sum(&self) -> f64 {
        self.omega_odd + self.omega_even
    }

    /// Coupling of 1-based link `j`.
    pub fn link(&self, j: usize) -> Result<LinkCoupling> {
        if j == 0 || j >= self.n_qubits {
            return Err(Error::validation(format!("link {j} outside a {}-qubit chain", self.n_qubits)));
        }
        Ok(self.links[j - 1])
    }

    /// Far-detuning premise: `|Δ| ≥ 20·g0` on every link.
    pub fn warnings(&self) -> Vec<String> {
        let delta = self.detuning().abs();
        self.links
            .iter()
            .enumerate()
            .filter(|(_, l)| delta < 20.0 * l.g0.abs())
            .map(|(k, l)| format!("link {}: detuning {delta} is below 20·g0 = {}", k + 1, 20.0 * l.g0.abs()))
            .collect()
    }
}

/// AC flux drive of one SQUID.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveSettings {
    pub link: usize,
    pub a1: f64,
    pub a2: f64,
    pub nu1: f64,
    pub nu2: f64,
    pub phi1: PiPhase,
    pub phi2: PiPhase,
}

impl DriveSettings {
    /// Both tones placed on their resonances.
    pub fn resonant(chain: &ChainSpec, link: usize, a1: f64, a2: f64, phi1: PiPhase, phi2: PiPhase) -> Self {
        Self { link, a1, a2, nu1: chain.detuning(), nu2: chain.frequency_sum(), phi1, phi2 }
    }

    /// Drive realizing `target` with both tones at amplitude `amplitude`.
    pub fn for_target(chain: &ChainSpec, target: &TwoLocalTarget, amplitude: f64) -> Result<Self> {
        let (phi1, phi2) = phase_lookup(target)?;
        Ok(Self::resonant(chain, target.link, amplitude, amplitude, phi1, phi2))
    }

    fn tones(&self) -> Vec<Tone> {
        [(self.a1, self.nu1, self.phi1), (self.a2, self.nu2, self.phi2)]
            .into_iter()
            .filter(|(a, _, _)| *a != 0.0)
            .map(|(amplitude, frequency, phi)| Tone { amplitude, frequency, phase: phi.radians() })
            .collect()
    }
}

/// A signed two-local interaction `±σ_j^a σ_{j+1}^b` on link `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoLocalTarget {
    pub negative: bool,
    pub first: Pauli,
    pub second: Pauli,
    pub link: usize,
}

impl TwoLocalTarget {
    pub fn new(negative: bool, first: Pauli, second: Pauli, link: usize) -> Self {
        Self { negative, first, second, link }
    }

    pub fn sign(&self) -> f64 {
        if self.negative {
            -1.0
        } else {
            1.0
        }
    }
}

/// Drive phases `(φ̃₁, φ̃₂)` that leave only `target` in the RWA Hamiltonian.
///
/// Mixed-axis rows depend on the parity of the link through `1 ± (−1)^j/2`.
pub fn phase_lookup(target: &TwoLocalTarget) -> Result<(PiPhase, PiPhase)> {
    use Pauli::{X, Y};
    if target.link == 0 {
        return Err(Error::validation("links are numbered from 1"));
    }
    // 1 + (−1)^j/2 in units of π
    let even = target.link.is_multiple_of(2);
    let parity_plus = if even { PiPhase::new(3, 2) } else { PiPhase::new(1, 2) };
    let parity_minus = if even { PiPhase::new(1, 2) } else { PiPhase::new(3, 2) };
    let half = PiPhase::new(1, 2);
    let three_half = PiPhase::new(3, 2);
    let one = PiPhase::integer(1);
    let two = PiPhase::integer(2);
    let row = match (target.first, target.second, target.negative) {
        (Y, Y, false) => (two, two),
        (Y, Y, true) => (one, one),
        (X, X, false) => (two, one),
        (X, X, true) => (one, two),
        (Y, X, false) => (parity_plus, three_half),
        (Y, X, true) => (parity_minus, half),
        (X, Y, false) => (parity_minus, three_half),
        (X, Y, true) => (parity_plus, half),
        (a, b, _) => {
            return Err(Error::validation(format!("no drive produces a {a}{b} interaction")));
        }
    };
    Ok(row)
}

fn check_drives(chain: &ChainSpec, drives: &[DriveSettings]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for d in drives {
        chain.link(d.link)?;
        if !seen.insert(d.link) {
            return Err(Error::validation(format!("link {} driven twice", d.link)));
        }
    }
    Ok(())
}

/// `Σ_q (ω_q/2) Z_q + Σ_j [g0 + g1·(A₁cos(ν₁t+φ̃₁) + A₂cos(ν₂t+φ̃₂))]·Y_j Y_{j+1}`.
pub fn lab_frame_hamiltonian(chain: &ChainSpec, drives: &[DriveSettings]) -> Result<TimeDependentHamiltonian> {
    check_drives(chain, drives)?;
    let n = chain.n_qubits();
    let mut h = TimeDependentHamiltonian::new(n);
    for q in 1..=n {
        h.push(
            PauliString::from_sites(n, &[(q - 1, Pauli::Z)])?,
            HarmonicCoefficient::constant(chain.omega(q) / 2.0),
        )?;
    }
    for j in 1..n {
        let link = chain.link(j)?;
        let tones = drives
            .iter()
            .find(|d| d.link == j)
            .map(|d| {
                d.tones()
                    .into_iter()
                    .map(|t| Tone { amplitude: link.g1 * t.amplitude, ..t })
                    .collect()
            })
            .unwrap_or_default();
        h.push(
            PauliString::from_sites(n, &[(j - 1, Pauli::Y), (j, Pauli::Y)])?,
            HarmonicCoefficient { constant: link.g0, tones },
        )?;
    }
    Ok(h)
}

/// Rotating-wave coefficients of `XX, XY, YX, YY` on the drive's link.
pub fn rwa_link_coefficients(chain: &ChainSpec, drive: &DriveSettings) -> Result<[(Pauli, Pauli, f64); 4]> {
    let link = chain.link(drive.link)?;
    let check = |amp: f64, nu: f64, target: f64, name: &str| {
        if amp != 0.0 && (nu - target).abs() > RESONANCE_TOLERANCE * target.abs().max(1.0) {
            Err(Error::validation(format!(
                "link {} tone {name} at {nu} rad/ns is off its resonance {target} rad/ns",
                drive.link
            )))
        } else {
            Ok(())
        }
    };
    check(drive.a1, drive.nu1, chain.detuning(), "ν₁")?;
    check(drive.a2, drive.nu2, chain.frequency_sum(), "ν₂")?;
    let (c1, s1) = (drive.phi1.cos(), drive.phi1.sin());
    let (c2, s2) = (drive.phi2.cos(), drive.phi2.sin());
    let (a1, a2) = (drive.a1, drive.a2);
    // (−1)^j
    let parity = if drive.link.is_multiple_of(2) { 1.0 } else { -1.0 };
    let w = link.g1 / 4.0;
    Ok([
        (Pauli::X, Pauli::X, w * (a1 * c1 - a2 * c2)),
        (Pauli::X, Pauli::Y, w * (parity * a1 * s1 - a2 * s2)),
        (Pauli::Y, Pauli::X, w * (-parity * a1 * s1 - a2 * s2)),
        (Pauli::Y, Pauli::Y, w * (a1 * c1 + a2 * c2)),
    ])
}

/// Static effective Hamiltonian in the frame rotating with the qubits.
pub fn rwa_hamiltonian(chain: &ChainSpec, drives: &[DriveSettings]) -> Result<HermitianOperator> {
    check_drives(chain, drives)?;
    let n = chain.n_qubits();
    let mut sum = PauliSum::new(n);
    for d in drives {
        for (a, b, w) in rwa_link_coefficients(chain, d)? {
            if w != 0.0 {
                let j = d.link - 1;
                sum.push(PauliString::from_sites(n, &[(j, a), (j + 1, b)])?.scaled(w))?;
            }
        }
    }
    HermitianOperator::from_pauli_sum(&sum)
}

/// Population time series under both models and their worst disagreement.
#[derive(Debug, Clone, PartialEq)]
pub struct RwaComparison {
    pub times: Vec<f64>,
    pub observables: Vec<usize>,
    /// `lab[k][i]`: population of `observables[i]` at `times[k]`.
    pub lab: Vec<Vec<f64>>,
    pub rwa: Vec<Vec<f64>>,
    pub max_deviation: f64,
}

/// Sampling and budget options for [`rwa_deviation`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RwaRun {
    pub t_max: f64,
    /// RK4 step, ns.
    pub dt: f64,
    /// Spacing of reported samples, ns.
    pub sample_every: f64,
    /// Permit lab-frame integration beyond [`LAB_FRAME_QUBIT_BUDGET`] qubits.
    pub override_budget: bool,
}

/// Co-simulates the lab frame (RK4) and the RWA Hamiltonian (exact) and
/// compares computational-basis populations, which the free rotation leaves
/// untouched.
pub fn rwa_deviation(
    chain: &ChainSpec,
    drives: &[DriveSettings],
    run: &RwaRun,
    observables: &[usize],
    psi0: &StateVector,
) -> Result<RwaComparison> {
    if chain.n_qubits() > LAB_FRAME_QUBIT_BUDGET && !run.override_budget {
        return Err(Error::resource(format!(
            "lab-frame integration of {} qubits exceeds the budget of {LAB_FRAME_QUBIT_BUDGET}",
            chain.n_qubits()
        )));
    }
    if psi0.n_qubits() != chain.n_qubits() {
        return Err(Error::validation("initial state does not match the chain"));
    }
    if let Some(&bad) = observables.iter().find(|&&o| o >= psi0.dim()) {
        return Err(Error::validation(format!("basis index {bad} outside the register")));
    }
    if !(run.t_max >= 0.0) || !(run.sample_every > 0.0) {
        return Err(Error::validation("need t_max ≥ 0 and a positive sampling interval"));
    }
    let lab_h = lab_frame_hamiltonian(chain, drives)?;
    let rwa = rwa_hamiltonian(chain, drives)?.spectral();
    let samples = (run.t_max / run.sample_every).round() as usize;
    let mut out = RwaComparison {
        times: Vec::with_capacity(samples + 1),
        observables: observables.to_vec(),
        lab: Vec::with_capacity(samples + 1),
        rwa: Vec::with_capacity(samples + 1),
        max_deviation: 0.0,
    };
    let mut lab = psi0.clone();
    let mut t_prev = 0.0;
    for k in 0..=samples {
        let t = if k == samples { run.t_max } else { k as f64 * run.sample_every };
        lab = evolve_harmonic(&lab_h, t_prev, t, &lab, run.dt)?;
        t_prev = t;
        let rot = rwa.evolve(t, psi0)?;
        let p_lab: Vec<f64> = observables.iter().map(|&o| lab.population(o)).collect();
        let p_rwa: Vec<f64> = observables.iter().map(|&o| rot.population(o)).collect();
        for (a, b) in p_lab.iter().zip(&p_rwa) {
            out.max_deviation = out.max_deviation.max((a - b).abs());
        }
        out.times.push(t);
        out.lab.push(p_lab);
        out.rwa.push(p_rwa);
    }
    Ok(out)
}
