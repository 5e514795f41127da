//! Fermion-lattice experiments: Trotter fidelity, timing and compilation.

use std::f64::consts::TAU;

use daqc_core::hubbard::{
    compile_schedule, export_schedule, hubbard_spin_hamiltonian, simulate_schedule, timing, BlockCounts, LatticeSpec,
    Schedule,
};
use daqc_core::numfmt::fixed;
use daqc_core::operator::SpectralDecomposition;
use daqc_core::state::{fidelity, StateVector};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::config::ExperimentConfig;
use crate::csv::{num, Table};
use crate::error::{HarnessError, Result};
use crate::initial::random_state;

/// Exact propagator of a lattice Hamiltonian, diagonalized once.
pub struct ExactEvolution {
    spectral: SpectralDecomposition,
}

impl ExactEvolution {
    /// Hopping only unless `spec` switches the on-site term on.
    pub fn new(spec: &LatticeSpec) -> Result<Self> {
        Ok(Self { spectral: hubbard_spin_hamiltonian(spec)?.spectral() })
    }

    pub fn evolve(&self, t: f64, psi0: &StateVector) -> Result<StateVector> {
        Ok(self.spectral.evolve(t, psi0)?)
    }
}

/// `exp(−iHt)·ψ0` for the lattice Hamiltonian of `spec`.
pub fn exact_hopping_evolution(spec: &LatticeSpec, t: f64, psi0: &StateVector) -> Result<StateVector> {
    ExactEvolution::new(spec)?.evolve(t, psi0)
}

/// One fidelity sample. `sample` indexes the initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityRow {
    pub sample: usize,
    pub hopping_time: f64,
    pub steps: usize,
    pub fidelity: f64,
}

/// Endpoint statistics for one Trotter step count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelitySummary {
    pub steps: usize,
    pub count: usize,
    pub mean: f64,
    /// Sample standard deviation; zero for a single state.
    pub std: f64,
    pub min: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FidelityReport {
    pub rows: Vec<FidelityRow>,
    pub summary: Vec<FidelitySummary>,
}

impl FidelityReport {
    fn from_rows(rows: Vec<FidelityRow>, steps: &[usize], endpoint: f64) -> Self {
        let summary = steps
            .iter()
            .map(|&n| {
                let f: Vec<f64> = rows
                    .iter()
                    .filter(|r| r.steps == n && r.hopping_time == endpoint)
                    .map(|r| r.fidelity)
                    .collect();
                let count = f.len();
                let mean = f.iter().sum::<f64>() / count as f64;
                let var = if count > 1 {
                    f.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (count - 1) as f64
                } else {
                    0.0
                };
                FidelitySummary { steps: n, count, mean, std: var.sqrt(), min: f.iter().copied().fold(1.0, f64::min) }
            })
            .collect();
        Self { rows, summary }
    }

    pub fn mean(&self, steps: usize) -> Option<f64> {
        self.summary.iter().find(|s| s.steps == steps).map(|s| s.mean)
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(["sample", "at", "steps", "fidelity"]);
        for r in &self.rows {
            t.push(vec![r.sample.to_string(), num(r.hopping_time), r.steps.to_string(), num(r.fidelity)]);
        }
        t
    }

    pub fn summary_table(&self) -> Table {
        let mut t = Table::new(["steps", "count", "mean", "std", "min"]);
        for s in &self.summary {
            t.push(vec![s.steps.to_string(), s.count.to_string(), num(s.mean), num(s.std), num(s.min)]);
        }
        t
    }
}

/// Rounding can push `|⟨a|b⟩|²` a few ulps past 1.
fn bounded_fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(fidelity(a, b)?.clamp(0.0, 1.0))
}

/// Uniform `𝒜t` grid from 0 to `cfg.hopping_time`, endpoints included.
pub fn time_grid(cfg: &ExperimentConfig) -> Vec<f64> {
    let k = cfg.time_samples;
    if k == 1 {
        return vec![cfg.hopping_time];
    }
    (0..k).map(|i| cfg.hopping_time * i as f64 / (k - 1) as f64).collect()
}

/// Fidelity of the compiled evolution against the exact one along the `𝒜t` grid.
pub fn fidelity_experiment(cfg: &ExperimentConfig, psi0: &StateVector) -> Result<FidelityReport> {
    cfg.validate()?;
    let spec = cfg.lattice()?;
    let exact = ExactEvolution::new(&spec)?;
    let mut rows = Vec::new();
    for at in time_grid(cfg) {
        let t = at / spec.hopping();
        let target = exact.evolve(t, psi0)?;
        for &n in &cfg.steps {
            let simulated = simulate_schedule(&compile_schedule(&spec, t, n)?, psi0)?;
            rows.push(FidelityRow { sample: 0, hopping_time: at, steps: n, fidelity: bounded_fidelity(&target, &simulated)? });
        }
    }
    Ok(FidelityReport::from_rows(rows, &cfg.steps, cfg.hopping_time))
}

/// Endpoint fidelity over `cfg.samples` Haar-random states drawn from one
/// ChaCha20 stream seeded with `cfg.seed`.
pub fn mean_fidelity_experiment(cfg: &ExperimentConfig) -> Result<FidelityReport> {
    cfg.validate()?;
    let spec = cfg.lattice()?;
    let t = cfg.time();
    let exact = ExactEvolution::new(&spec)?;
    let schedules: Vec<Schedule> =
        cfg.steps.iter().map(|&n| compile_schedule(&spec, t, n)).collect::<daqc_core::Result<_>>()?;
    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::with_capacity(cfg.samples * schedules.len());
    for sample in 0..cfg.samples {
        let psi0 = random_state(spec.n_qubits(), &mut rng)?;
        let target = exact.evolve(t, &psi0)?;
        for s in &schedules {
            let simulated = simulate_schedule(s, &psi0)?;
            rows.push(FidelityRow {
                sample,
                hopping_time: cfg.hopping_time,
                steps: s.steps(),
                fidelity: bounded_fidelity(&target, &simulated)?,
            });
        }
    }
    Ok(FidelityReport::from_rows(rows, &cfg.steps, cfg.hopping_time))
}

/// Hardware durations per lattice width and step count, 3 decimals.
pub fn timing_table(widths: &[usize], hopping_time: f64, steps: &[usize], drive_ghz: f64) -> Result<Table> {
    if widths.is_empty() || steps.is_empty() {
        return Err(HarnessError::argument("timing needs at least one width and one step count"));
    }
    let mut t = Table::new(["l", "n", "tau_a_ns", "tau_b_ns", "tau_sim_us"]);
    for &l in widths {
        for &n in steps {
            let r = timing(l, hopping_time, n, TAU * drive_ghz)?;
            t.push(vec![l.to_string(), n.to_string(), fixed(r.tau_a, 3), fixed(r.tau_b, 3), fixed(r.tau_sim_us, 3)]);
        }
    }
    Ok(t)
}

/// Block counts and export text of one compiled schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct CompileReport {
    pub n_qubits: usize,
    pub steps: usize,
    pub formula: BlockCounts,
    pub emitted: BlockCounts,
    pub export: String,
}

impl CompileReport {
    pub fn summary(&self) -> String {
        let line = |name: &str, c: &BlockCounts| {
            format!("blocks_per_step_{name}={} type_a={} type_b={}\n", c.total, c.type_a, c.type_b)
        };
        let mut s = format!("qubits={} steps={}\n", self.n_qubits, self.steps);
        s.push_str(&line("formula", &self.formula));
        s.push_str(&line("emitted", &self.emitted));
        if self.formula != self.emitted {
            s.push_str("note: emitted counts differ from the closed-form counts for this shape\n");
        }
        s
    }
}

pub fn compile_report(cfg: &ExperimentConfig, steps: usize) -> Result<CompileReport> {
    let spec = cfg.lattice()?;
    let s = compile_schedule(&spec, cfg.time(), steps)?;
    Ok(CompileReport {
        n_qubits: spec.n_qubits(),
        steps,
        formula: s.formula_counts()?,
        emitted: s.emitted_counts(),
        export: export_schedule(&s)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::initial::InitialStateSpec;

    // row and column hops commute on a 2x2 ring, so 2x2 Trotterizes exactly
    fn small() -> ExperimentConfig {
        ExperimentConfig { steps: vec![2, 8], time_samples: 3, samples: 3, ..Default::default() }
    }

    #[test]
    fn exact_evolution_at_zero_is_identity() {
        let spec = LatticeSpec::hopping_only(2, 2, 1.0).unwrap();
        let psi = InitialStateSpec::Random(1).build(&spec).unwrap();
        let out = exact_hopping_evolution(&spec, 0.0, &psi).unwrap();
        assert!(1.0 - fidelity(&psi, &out).unwrap() < 1e-12);
    }

    #[test]
    fn curve_starts_at_one_and_summarizes_the_endpoint() {
        let cfg = small();
        let spec = cfg.lattice().unwrap();
        let psi = "up@1,1".parse::<InitialStateSpec>().unwrap().build(&spec).unwrap();
        let r = fidelity_experiment(&cfg, &psi).unwrap();
        assert_eq!(r.rows.len(), 6);
        assert!(r.rows[..2].iter().all(|row| row.hopping_time == 0.0 && row.fidelity > 1.0 - 1e-12));
        assert_eq!(r.summary.len(), 2);
        assert_eq!(r.summary[1].count, 1);
        assert_eq!(r.summary[1].mean, r.rows[5].fidelity);
    }

    #[test]
    fn random_ensemble_is_seeded() {
        let cfg = small();
        let a = mean_fidelity_experiment(&cfg).unwrap();
        let b = mean_fidelity_experiment(&cfg).unwrap();
        assert_eq!(a.table().render(), b.table().render());
        let c = mean_fidelity_experiment(&ExperimentConfig { seed: 1, ..cfg }).unwrap();
        assert_ne!(a.table().render(), c.table().render());
        assert!(a.rows.iter().all(|r| (0.0..=1.0).contains(&r.fidelity)));
    }

    #[test]
    fn timing_rows_are_rendered_to_three_decimals() {
        let t = timing_table(&[2], 4.0, &[10], 0.08).unwrap();
        assert_eq!(t.render(), "l,n,tau_a_ns,tau_b_ns,tau_sim_us\n2,10,0.796,3.125,0.161\n");
    }

    #[test]
    fn compile_report_counts_two_by_three() {
        let r = compile_report(&ExperimentConfig::default(), 2).unwrap();
        assert_eq!(r.emitted.total, 62);
        assert_eq!(r.formula, r.emitted);
        // 62 analog blocks in each of the two steps
        let blocks = r.export.lines().skip(1).filter(|l| !l.contains(",local,")).count();
        assert_eq!(blocks, 124);
    }
}
