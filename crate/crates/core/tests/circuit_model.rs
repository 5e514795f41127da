use std::f64::consts::TAU;

use daqc_core::circuit::{
    cpb_spectrum, full_charge_couplings, three_qubit_effective_params, two_qubit_effective_params,
    CpbSpectrumRequest, FluxBias, ThreeQubitCircuitParams, TwoQubitCircuitParams,
};
use daqc_core::evolve::Tone;

fn circuit(e_js: f64) -> TwoQubitCircuitParams {
    TwoQubitCircuitParams {
        c_g1: 0.5,
        c_g2: 0.6,
        c_j1: 1.5,
        c_j2: 1.8,
        c_c: 1.0,
        c_s: 12.0,
        e_j1: TAU * 9.0,
        e_j2: TAU * 1.0,
        e_js,
        v_g1: 0.3,
        v_g2: -0.2,
    }
}

/// Bisects `E_Js` so that `g0/2π = 0.05 GHz` at the given DC bias.
fn solve_squid_energy(phi_dc: f64) -> f64 {
    let target = TAU * 0.05;
    let g0 = |e_js: f64| two_qubit_effective_params(&circuit(e_js), &FluxBias::dc(phi_dc)).unwrap().g0;
    let (mut lo, mut hi): (f64, f64) = (1e-3, 1e6);
    // g0 falls monotonically with E_Js
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if g0(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo * hi).sqrt()
}

#[test]
fn a_circuit_reaches_the_lattice_benchmark_couplings() {
    let phi_dc = 1.5;
    let e_js = solve_squid_energy(phi_dc);
    let tone_amplitude = 0.08 / (0.05 * phi_dc.tan());
    let bias = FluxBias {
        dc: phi_dc,
        tones: vec![Tone { amplitude: tone_amplitude, frequency: TAU * 8.0, phase: 0.0 }],
    };
    let p = two_qubit_effective_params(&circuit(e_js), &bias).unwrap();
    assert!((p.g0 / TAU - 0.05).abs() < 1e-9);
    assert!((tone_amplitude * p.g1 / TAU - 0.08).abs() < 1e-9);
    assert!(bias.warnings().is_empty(), "{:?}", bias.warnings());
    assert!((p.omega1 / TAU - 9.0).abs() < 1e-12 && (p.omega2 / TAU - 1.0).abs() < 1e-12);
}

#[test]
fn renormalized_charges_satisfy_closed_form_identities() {
    let p = circuit(TAU * 50.0);
    let k = full_charge_couplings(&p).unwrap();
    let (c1, c2, cc, cs) = (p.c1(), p.c2(), p.c_c, p.c_s);
    let lhs = k.c_j1 + cc * cc / (cs + cc + cc * c2 / (cc + c2));
    assert!((lhs - (c1 + cc)).abs() < 1e-12 * lhs);
    let denom = 2.0 * c2 / cc + c2 * cs / (cc * cc) + cs / cc + 1.0;
    let rest = k.n_g1 + p.c_g2 * p.v_g2 / denom;
    assert!((rest + p.c_g1 * p.v_g1).abs() < 1e-12);
}

#[test]
fn couplings_swap_with_the_qubits() {
    let p = circuit(TAU * 50.0);
    let a = full_charge_couplings(&p).unwrap();
    let b = full_charge_couplings(&p.swapped()).unwrap();
    assert!((a.c_j1 - b.c_j2).abs() < 1e-12 && (a.c_j2 - b.c_j1).abs() < 1e-12);
    assert!((a.g1s - b.g2s).abs() < 1e-15 && (a.g12 - b.g12).abs() < 1e-15);
    assert!((a.n_gs - b.n_gs).abs() < 1e-12);
}

#[test]
fn middle_island_loads_both_couplers() {
    let p = circuit(TAU * 50.0);
    let bias = FluxBias::dc(0.4);
    let two = two_qubit_effective_params(&p, &bias).unwrap();
    let three = three_qubit_effective_params(&ThreeQubitCircuitParams(p), &[bias.clone(), bias]).unwrap();
    let ratio = three.links[0].g0 / two.g0;
    assert!((ratio - (p.c2() + p.c_c) / (p.c2() + 2.0 * p.c_c)).abs() < 1e-12);
    assert_eq!(three.links[0], three.links[1]);
}

#[test]
fn reference_spectra_are_periodic_and_symmetric() {
    let grid: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
    for (ej, gamma) in [(1.0, 1.0), (1.0, 4.0), (4.0, 1.0)] {
        let base = cpb_spectrum(&CpbSpectrumRequest::new(ej, 1.0, gamma, grid.clone())).unwrap();
        let shifted: Vec<f64> = grid.iter().map(|g| g + 1.0).collect();
        let mirrored: Vec<f64> = grid.iter().map(|g| 1.0 - g).collect();
        let up = cpb_spectrum(&CpbSpectrumRequest::new(ej, 1.0, gamma, shifted)).unwrap();
        let mirror = cpb_spectrum(&CpbSpectrumRequest::new(ej, 1.0, gamma, mirrored)).unwrap();
        for ((a, b), c) in base.iter().zip(&up).zip(&mirror) {
            assert!(a.windows(2).all(|w| w[0] <= w[1]));
            for ((x, y), z) in a.iter().zip(b).zip(c) {
                assert!((x - y).abs() < 1e-9 && (x - z).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn truncation_ten_matches_fourteen() {
    let grid = vec![0.0, 0.25, 0.5];
    let mut req = CpbSpectrumRequest::new(4.0, 1.0, 1.0, grid);
    let ten = cpb_spectrum(&req).unwrap();
    req.truncation = 14;
    let fourteen = cpb_spectrum(&req).unwrap();
    for (a, b) in ten.iter().zip(&fourteen) {
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < 1e-8);
        }
    }
}
