//! Project acceptance criteria, one test per criterion. Each prints a single
//! PASS/FAIL line straight to stderr so it shows up without `--nocapture`.

use std::f64::consts::TAU;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use daqc_core::circuit::{cpb_spectrum, CpbSpectrumRequest, LinkCoupling};
use daqc_core::hubbard::LatticeSpec;
use daqc_core::pauli::Pauli;
use daqc_core::spin::{rwa_link_coefficients, ChainSpec, DriveSettings, TwoLocalTarget};
use daqc_core::verify::{compiled_hopping_deviation, conjugation_identity_deviation, jordan_wigner_deviation};
use daqc_harness::device::{rwa_report, RwaCase};
use daqc_harness::lattice::mean_fidelity_experiment;
use daqc_harness::ExperimentConfig;

fn report(id: u32, pass: bool, detail: &str, elapsed: Duration) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let line = format!("criterion {id}: {verdict} | {detail} | {:.2} s\n", elapsed.as_secs_f64());
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    assert!(pass, "{}", line.trim_end());
}

struct Run {
    stdout: String,
    stderr: String,
    ok: bool,
    elapsed: Duration,
}

fn daqc(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_daqc")).args(args).output().expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        ok: out.status.success(),
        elapsed: start.elapsed(),
    }
}

fn emitted_blocks(log: &str) -> Option<usize> {
    log.split_whitespace().find_map(|w| w.strip_prefix("blocks_per_step_emitted=")).and_then(|v| v.parse().ok())
}

#[test]
fn criterion_1_gate_count() {
    let mut pass = true;
    let mut detail = Vec::new();
    let mut elapsed = Duration::ZERO;
    for (cols, rows, expected) in [("2", "3", 62), ("3", "3", 2 * 7 * 7 + 24)] {
        let run = daqc(&["compile", "--cols", cols, "--rows", rows]);
        let from_log = emitted_blocks(&run.stderr);
        let from_export = run.stdout.lines().filter(|l| l.starts_with("0,")).count();
        let ok = run.ok && from_log == Some(expected) && from_export == expected && run.elapsed < Duration::from_secs(1);
        pass &= ok;
        elapsed = elapsed.max(run.elapsed);
        detail.push(format!("{cols}x{rows}: {from_export} blocks/step (expected {expected})"));
    }
    report(1, pass, &detail.join(", "), elapsed);
}

#[test]
fn criterion_2_timing_table() {
    let reference = [
        (10, 0.796, 3.125, 0.161),
        (20, 0.398, 3.125, 0.156),
        (30, 0.265, 3.125, 0.153),
    ];
    let run = daqc(&["timing", "--cols", "2", "--at", "4", "--drive-ghz", "0.08", "--steps", "10,20,30"]);
    let mut misses = Vec::new();
    let rows: Vec<Vec<f64>> =
        run.stdout.lines().skip(1).map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    for ((n, a, b, sim), row) in reference.iter().zip(&rows) {
        assert_eq!(row[1] as usize, *n);
        for (name, want, got) in [("tau_a", a, row[2]), ("tau_b", b, row[3]), ("tau_sim", sim, row[4])] {
            if (got - want).abs() > 0.0005 + 1e-12 {
                misses.push(format!("n={n} {name}: computed {got:.3} vs reference {want:.3}"));
            }
        }
    }
    let pass = run.ok && rows.len() == 3 && misses.is_empty() && run.elapsed < Duration::from_secs(1);
    let detail = if misses.is_empty() { "all nine values match".to_string() } else { misses.join("; ") };
    report(2, pass, &detail, run.elapsed);
}

#[test]
fn criterion_3_operator_identities() {
    let start = Instant::now();
    let jw = jordan_wigner_deviation(6).unwrap();
    let conj = conjugation_identity_deviation();
    let elapsed = start.elapsed();
    let pass = jw <= 1e-12 && conj <= 1e-12 && elapsed < Duration::from_secs(10);
    report(3, pass, &format!("JW strings {jw:.1e}, conjugation identities {conj:.1e}"), elapsed);
}

#[test]
fn criterion_4_compiled_hamiltonian() {
    let start = Instant::now();
    let devs: Vec<f64> = [(2, 2), (2, 3)]
        .iter()
        .map(|&(c, r)| compiled_hopping_deviation(&LatticeSpec::hopping_only(c, r, 1.0).unwrap()).unwrap())
        .collect();
    let elapsed = start.elapsed();
    let pass = devs.iter().all(|&d| d <= 1e-12) && elapsed < Duration::from_secs(30);
    report(4, pass, &format!("2x2 {:.1e}, 2x3 {:.1e}", devs[0], devs[1]), elapsed);
}

#[test]
fn criterion_5_trotter_fidelity() {
    let start = Instant::now();
    let cfg = ExperimentConfig { samples: 1000, steps: vec![10, 20, 30], seed: 0, ..Default::default() };
    let r = mean_fidelity_experiment(&cfg).unwrap();
    let elapsed = start.elapsed();
    let (m10, m20, m30) = (r.mean(10).unwrap(), r.mean(20).unwrap(), r.mean(30).unwrap());
    let slack = 0.005;
    let pass = (0.94..=1.0).contains(&m30)
        && m30 > m20 - slack
        && m20 > m10 - slack
        && elapsed < Duration::from_secs(20 * 60);
    let std30 = r.summary.iter().find(|s| s.steps == 30).unwrap().std;
    report(5, pass, &format!("mean n=10 {m10:.4}, n=20 {m20:.4}, n=30 {m30:.4} (std {std30:.4})"), elapsed);
}

#[test]
fn criterion_6_phase_tables() {
    let start = Instant::now();
    let amplitude = 0.7;
    let chain = ChainSpec::uniform(4, TAU * 9.0, TAU * 1.0, LinkCoupling { g0: TAU * 0.05, g1: TAU * 0.1 }).unwrap();
    let mut rows = 0;
    let mut bad = Vec::new();
    for link in 1..=3 {
        let half = chain.link(link).unwrap().g1 * amplitude / 2.0;
        for first in [Pauli::X, Pauli::Y] {
            for second in [Pauli::X, Pauli::Y] {
                for negative in [false, true] {
                    let target = TwoLocalTarget::new(negative, first, second, link);
                    let drive = DriveSettings::for_target(&chain, &target, amplitude).unwrap();
                    for (a, b, w) in rwa_link_coefficients(&chain, &drive).unwrap() {
                        let want = if (a, b) == (first, second) { target.sign() * half } else { 0.0 };
                        if w != want {
                            bad.push(format!("{target:?}: {a}{b} = {w}"));
                        }
                    }
                    rows += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < Duration::from_secs(1);
    let detail = if bad.is_empty() { format!("{rows} rows exact on odd and even links") } else { bad.join("; ") };
    report(6, pass, &detail, elapsed);
}

#[test]
fn criterion_7_rwa_validation() {
    let start = Instant::now();
    let two = rwa_report(RwaCase::TwoQubit, None, 0.05).unwrap().comparison.max_deviation;
    let three = rwa_report(RwaCase::ThreeQubit, None, 0.05).unwrap().comparison.max_deviation;
    let elapsed = start.elapsed();
    let pass = two <= 0.15 && three <= 0.15 && elapsed < Duration::from_secs(120);
    report(7, pass, &format!("max population deviation: two-qubit {two:.4}, three-qubit {three:.4}"), elapsed);
}

#[test]
fn criterion_8_cpb_spectra() {
    let start = Instant::now();
    let grid: Vec<f64> = (0..=40).map(|k| k as f64 / 40.0).collect();
    let mut periodic = 0.0f64;
    let mut truncation = 0.0f64;
    let dir = tempfile::tempdir().unwrap();
    let mut csv_ok = true;
    for (name, ej, gamma) in [("coupled-even", 1.0, 1.0), ("coupled-gamma4", 1.0, 4.0), ("coupled-ej4", 4.0, 1.0)] {
        let levels = |g: Vec<f64>, trunc: usize| {
            let mut req = CpbSpectrumRequest::new(ej, 1.0, gamma, g);
            req.truncation = trunc;
            cpb_spectrum(&req).unwrap()
        };
        let base = levels(grid.clone(), 10);
        let shifted = levels(grid.iter().map(|g| g + 1.0).collect(), 10);
        let mirrored = levels(grid.iter().map(|g| -g).collect(), 10);
        let wide = levels(grid.clone(), 14);
        for k in 0..grid.len() {
            for m in 0..4 {
                periodic = periodic.max((base[k][m] - shifted[k][m]).abs()).max((base[k][m] - mirrored[k][m]).abs());
                truncation = truncation.max((base[k][m] - wide[k][m]).abs());
            }
        }
        let path = dir.path().join(format!("{name}.csv"));
        let run = daqc(&["spectrum", "--preset", name, "--out", path.to_str().unwrap()]);
        let text = std::fs::read_to_string(&path).unwrap_or_default();
        csv_ok &= run.ok && text.starts_with("n_g,E0,E1,E2,E3\n") && text.lines().count() == 102;
    }
    let elapsed = start.elapsed();
    let pass = periodic <= 1e-9 && truncation < 1e-8 && csv_ok && elapsed < Duration::from_secs(10);
    let detail = format!("symmetry {periodic:.1e}, truncation 10→14 {truncation:.1e}, preset CSVs written: {csv_ok}");
    report(8, pass, &detail, elapsed);
}

#[test]
fn criterion_9_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let bytes: Vec<Vec<u8>> = ["a.csv", "b.csv"]
        .iter()
        .map(|name| {
            let p = dir.path().join(name);
            let run = daqc(&["benchmark", "--random", "20", "--seed", "42", "--out", p.to_str().unwrap()]);
            assert!(run.ok, "{}", run.stderr);
            std::fs::read(p).unwrap()
        })
        .collect();
    let elapsed = start.elapsed();
    let pass = bytes[0] == bytes[1] && !bytes[0].is_empty();
    report(9, pass, &format!("two seeded runs, {} bytes each, identical: {}", bytes[0].len(), bytes[0] == bytes[1]), elapsed);
}
