//! Device-level experiments: charge-qubit spectra, SQUID impedance and
//! lab-frame versus rotating-frame drive checks.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use daqc_core::circuit::{cpb_spectrum, impedance_ratio, CpbSpectrumRequest, LinkCoupling, TwoQubitCircuitParams};
use daqc_core::phase::PiPhase;
use daqc_core::spin::{rwa_deviation, ChainSpec, DriveSettings, RwaComparison, RwaRun};
use daqc_core::state::StateVector;

use crate::csv::{num, Table};
use crate::error::{HarnessError, Result};

/// Named parameter sets for charge-qubit spectra, in units of `E_C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPreset {
    pub name: &'static str,
    pub e_j: f64,
    pub gamma: f64,
    /// Report `E_m − E_0` instead of absolute levels.
    pub transitions: bool,
}

pub const SPECTRUM_PRESETS: [SpectrumPreset; 5] = [
    SpectrumPreset { name: "coupled-even", e_j: 1.0, gamma: 1.0, transitions: false },
    SpectrumPreset { name: "coupled-gamma4", e_j: 1.0, gamma: 4.0, transitions: false },
    SpectrumPreset { name: "coupled-ej4", e_j: 4.0, gamma: 1.0, transitions: false },
    SpectrumPreset { name: "qubit1", e_j: 0.303, gamma: 0.0, transitions: true },
    SpectrumPreset { name: "qubit2", e_j: 0.058, gamma: 0.0, transitions: true },
];

pub fn spectrum_preset(name: &str) -> Option<SpectrumPreset> {
    SPECTRUM_PRESETS.iter().copied().find(|p| p.name.eq_ignore_ascii_case(name))
}

/// `points` evenly spaced values over `[lo, hi]`; a single point sits at `lo`.
pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if points == 0 || !lo.is_finite() || !hi.is_finite() {
        return Err(HarnessError::argument("grid needs at least one point and finite bounds"));
    }
    if points == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..points).map(|k| lo + (hi - lo) * k as f64 / (points - 1) as f64).collect())
}

/// `n_g,E0,E1,E2,E3` over a gate-charge grid.
pub fn spectrum_report(e_j: f64, e_c: f64, gamma: f64, grid: &[f64], transitions: bool) -> Result<Table> {
    let levels = cpb_spectrum(&CpbSpectrumRequest::new(e_j, e_c, gamma, grid.to_vec()))?;
    let mut t = Table::new(["n_g", "E0", "E1", "E2", "E3"]);
    for (ng, e) in grid.iter().zip(levels) {
        let shift = if transitions { e[0] } else { 0.0 };
        let mut row = vec![num(*ng)];
        row.extend(e.iter().map(|x| num(x - shift)));
        t.push(row);
    }
    Ok(t)
}

/// Illustrative two-qubit circuit: capacitances in fF, energies in rad/ns,
/// SQUID at `E_Js/2π = 50 GHz` and `C_s = 12 fF`.
pub fn reference_circuit() -> TwoQubitCircuitParams {
    TwoQubitCircuitParams {
        c_g1: 0.5,
        c_g2: 0.6,
        c_j1: 1.5,
        c_j2: 1.8,
        c_c: 1.0,
        c_s: 12.0,
        e_j1: TAU * 9.0,
        e_j2: TAU * 1.0,
        e_js: TAU * 50.0,
        v_g1: 0.0,
        v_g2: 0.0,
    }
}

/// `phi_ext,ratio` over an external-flux grid.
pub fn impedance_report(p: &TwoQubitCircuitParams, phis: &[f64]) -> Result<Table> {
    let mut t = Table::new(["phi_ext", "ratio"]);
    for &phi in phis {
        t.push(vec![num(phi), num(impedance_ratio(p, phi)?)]);
    }
    Ok(t)
}

/// Drive scenarios compared in the lab and rotating frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RwaCase {
    /// Two qubits, both tones, `|01⟩ ↔ |10⟩` inversion.
    TwoQubit,
    /// Three qubits, both links driven from `|000⟩`.
    ThreeQubit,
    /// Exchange tone only.
    Exchange,
    /// Double-excitation tone only.
    DoubleExcitation,
    /// Two-qubit chain without any drive.
    Control,
}

impl RwaCase {
    pub const ALL: [RwaCase; 5] =
        [RwaCase::TwoQubit, RwaCase::ThreeQubit, RwaCase::Exchange, RwaCase::DoubleExcitation, RwaCase::Control];

    pub fn name(&self) -> &'static str {
        match self {
            RwaCase::TwoQubit => "two-qubit",
            RwaCase::ThreeQubit => "three-qubit",
            RwaCase::Exchange => "exchange",
            RwaCase::DoubleExcitation => "pair",
            RwaCase::Control => "control",
        }
    }

    /// Default RK4 step in ns.
    pub fn default_dt(&self) -> f64 {
        match self {
            RwaCase::ThreeQubit => 5e-4,
            _ => 1e-3,
        }
    }
}

impl fmt::Display for RwaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RwaCase {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        RwaCase::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| HarnessError::argument(format!("unknown rwa case `{s}`")))
    }
}

fn ghz(f: f64) -> f64 {
    TAU * f
}

struct Scenario {
    chain: ChainSpec,
    drives: Vec<DriveSettings>,
    psi0: StateVector,
    observables: Vec<usize>,
    t_max: f64,
}

/// Tone amplitudes are 1, so the chain's `g1` stands for `A·g1`.
fn scenario(case: RwaCase) -> Result<Scenario> {
    let chain = |n, g0, drive| ChainSpec::uniform(n, ghz(9.0), ghz(1.0), LinkCoupling { g0: ghz(g0), g1: ghz(drive) });
    let both = |c: &ChainSpec, link| DriveSettings::resonant(c, link, 1.0, 1.0, PiPhase::integer(2), PiPhase::integer(1));
    Ok(match case {
        RwaCase::TwoQubit | RwaCase::Control => {
            let c = chain(2, 0.2, 0.08)?;
            let drives = if case == RwaCase::Control { vec![] } else { vec![both(&c, 1)] };
            Scenario { chain: c, drives, psi0: StateVector::basis(2, 0b01)?, observables: vec![0b01, 0b10], t_max: 12.5 }
        }
        RwaCase::ThreeQubit => {
            let c = chain(3, 0.2, 0.1)?;
            let drives = vec![both(&c, 1), both(&c, 2)];
            Scenario { chain: c, drives, psi0: StateVector::basis(3, 0)?, observables: vec![0b000, 0b011, 0b101], t_max: 10.0 }
        }
        RwaCase::Exchange => {
            let c = chain(2, 0.05, 0.08)?;
            let d = DriveSettings::resonant(&c, 1, 1.0, 0.0, PiPhase::integer(2), PiPhase::integer(2));
            Scenario { chain: c, drives: vec![d], psi0: StateVector::basis(2, 0b01)?, observables: vec![0, 1, 2, 3], t_max: 12.5 }
        }
        RwaCase::DoubleExcitation => {
            let c = chain(2, 0.05, 0.08)?;
            let d = DriveSettings::resonant(&c, 1, 0.0, 1.0, PiPhase::integer(2), PiPhase::integer(1));
            Scenario { chain: c, drives: vec![d], psi0: StateVector::basis(2, 0b00)?, observables: vec![0, 1, 2, 3], t_max: 12.5 }
        }
    })
}

/// Basis label with qubit 1 first, e.g. `011`.
pub fn basis_label(index: usize, n_qubits: usize) -> String {
    format!("{index:0n_qubits$b}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct RwaReport {
    pub case: RwaCase,
    pub labels: Vec<String>,
    pub comparison: RwaComparison,
}

impl RwaReport {
    /// `t_ns,p_full_<label>...,p_rwa_<label>...`
    pub fn table(&self) -> Table {
        let header = std::iter::once("t_ns".to_string())
            .chain(self.labels.iter().map(|l| format!("p_full_{l}")))
            .chain(self.labels.iter().map(|l| format!("p_rwa_{l}")));
        let mut t = Table::new(header);
        let c = &self.comparison;
        for (k, time) in c.times.iter().enumerate() {
            let mut row = vec![num(*time)];
            row.extend(c.lab[k].iter().chain(&c.rwa[k]).map(|p| num(*p)));
            t.push(row);
        }
        t
    }

    /// Largest lab-frame population of `label` over the run.
    pub fn max_lab_population(&self, label: &str) -> Option<f64> {
        let i = self.labels.iter().position(|l| l == label)?;
        Some(self.comparison.lab.iter().map(|row| row[i]).fold(0.0, f64::max))
    }

    pub fn max_rwa_population(&self, label: &str) -> Option<f64> {
        let i = self.labels.iter().position(|l| l == label)?;
        Some(self.comparison.rwa.iter().map(|row| row[i]).fold(0.0, f64::max))
    }

    /// `case,max_deviation` plus per-observable extremes of both models.
    pub fn summary(&self) -> String {
        let mut s = format!("case={} max_deviation={}\n", self.case, num(self.comparison.max_deviation));
        for l in &self.labels {
            s.push_str(&format!(
                "  p_{l}: max_full={} max_rwa={}\n",
                num(self.max_lab_population(l).unwrap_or(0.0)),
                num(self.max_rwa_population(l).unwrap_or(0.0))
            ));
        }
        s
    }
}

/// Lab-frame RK4 versus RWA populations for one scenario.
pub fn rwa_report(case: RwaCase, dt: Option<f64>, sample_every: f64) -> Result<RwaReport> {
    let sc = scenario(case)?;
    let run = RwaRun { t_max: sc.t_max, dt: dt.unwrap_or(case.default_dt()), sample_every, override_budget: false };
    let comparison = rwa_deviation(&sc.chain, &sc.drives, &run, &sc.observables, &sc.psi0)?;
    let n = sc.chain.n_qubits();
    let labels = sc.observables.iter().map(|&o| basis_label(o, n)).collect();
    Ok(RwaReport { case, labels, comparison })
}
