use std::f64::consts::FRAC_1_SQRT_2;

use daqc_core::hubbard::{
    compile_coulomb, compile_horizontal, compile_schedule, hubbard_spin_hamiltonian, jw_hopping_string,
    onsite_terms, simulate_schedule, spinless_index, AnalogBlock, BlockKind, LatticeSpec, Spin,
};
use daqc_core::operator::HermitianOperator;
use daqc_core::pauli::PauliSum;
use daqc_core::state::{fidelity, StateVector};
use daqc_core::verify::compiled_hopping_deviation;
use daqc_core::Complex64;
use nalgebra::DMatrix;

fn max_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn sequence_unitary(blocks: &[AnalogBlock], n: usize) -> DMatrix<Complex64> {
    let dim = 1 << n;
    blocks.iter().fold(DMatrix::identity(dim, dim), |u, b| b.unitary(n).unwrap() * u)
}

#[test]
fn compiled_generators_rebuild_two_by_two_hopping() {
    let dev = compiled_hopping_deviation(&LatticeSpec::hopping_only(2, 2, 1.0).unwrap()).unwrap();
    assert!(dev <= 1e-12, "deviation {dev}");
}

#[test]
fn compiled_generators_rebuild_two_by_three_hopping() {
    let dev = compiled_hopping_deviation(&LatticeSpec::hopping_only(2, 3, 0.7).unwrap()).unwrap();
    assert!(dev <= 1e-12, "deviation {dev}");
}

#[test]
fn every_core_and_dressing_is_disjoint() {
    for (cols, rows) in [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4), (4, 5)] {
        let s = compile_schedule(&LatticeSpec::hopping_only(cols, rows, 1.0).unwrap(), 2.0, 4).unwrap();
        assert!(s.step_blocks().iter().all(AnalogBlock::is_disjoint), "{cols}x{rows}");
    }
}

#[test]
fn single_row_group_matches_dense_exponential() {
    // one row of two sites: hops (1,3) and (2,4) on four qubits
    let spec = LatticeSpec::hopping_only(2, 1, 1.0).unwrap();
    let theta = 0.37;
    let blocks = compile_horizontal(&spec, theta).unwrap();
    assert_eq!(blocks.len(), 12);
    let group = &blocks[..3];
    let (xs, _) = jw_hopping_string(1, 3, 4).unwrap();
    // the group realizes exp(−iθ·(−X₁Z₂X₃))
    let mut h = PauliSum::new(4);
    h.push(xs.scaled(2.0)).unwrap();
    let exact = HermitianOperator::from_pauli_sum(&h).unwrap().spectral().unitary(theta);
    let compiled = sequence_unitary(group, 4);
    for x in 0..16 {
        let col = |m: &DMatrix<Complex64>| m.column(x).iter().copied().collect::<Vec<_>>();
        let a = StateVector::normalized(4, col(&exact)).unwrap();
        let b = StateVector::normalized(4, col(&compiled)).unwrap();
        assert!(fidelity(&a, &b).unwrap() > 1.0 - 1e-10);
    }
    assert!(max_diff(&exact, &compiled) < 1e-12);
}

#[test]
fn coulomb_blocks_equal_onsite_exponential() {
    let spec = LatticeSpec::new(1, 1, 0.0, 1.3, true).unwrap();
    let t = 0.8;
    let theta_b = spec.onsite() * t / 4.0;
    let blocks = compile_coulomb(&spec, theta_b).unwrap();
    assert_eq!(blocks.iter().filter(|b| b.kind == BlockKind::CoulombA).count(), 1);
    let compiled = sequence_unitary(&blocks, 2);
    let exact = HermitianOperator::from_pauli_sum(&onsite_terms(&spec).unwrap()).unwrap().spectral().unitary(t);
    // equal up to the global phase of the identity term
    let phase = exact[(0, 0)] / compiled[(0, 0)];
    assert!((phase.norm() - 1.0).abs() < 1e-12);
    assert!(max_diff(&exact, &(compiled * phase)) < 1e-12);
}

#[test]
fn zero_time_schedule_is_identity() {
    let spec = LatticeSpec::hopping_only(2, 2, 1.0).unwrap();
    let s = compile_schedule(&spec, 0.0, 3).unwrap();
    let psi = StateVector::with_ones(8, &[0, 3, 5]).unwrap();
    let out = simulate_schedule(&s, &psi).unwrap();
    assert!(fidelity(&psi, &out).unwrap() > 1.0 - 1e-12);
}

fn occupied(spec: &LatticeSpec, sites: &[(usize, usize, Spin)]) -> StateVector {
    // occupied modes are |0⟩, empty ones |1⟩
    let n = spec.n_qubits();
    let filled: Vec<usize> = sites.iter().map(|&(r, c, s)| spinless_index(spec, r, c, s).unwrap() - 1).collect();
    let empty: Vec<usize> = (0..n).filter(|q| !filled.contains(q)).collect();
    StateVector::with_ones(n, &empty).unwrap()
}

#[test]
fn schedule_conserves_particle_number() {
    let spec = LatticeSpec::hopping_only(2, 3, 1.0).unwrap();
    let psi = occupied(&spec, &[(0, 1, Spin::Up), (1, 2, Spin::Down), (2, 1, Spin::Down)]);
    assert!((psi.mean_occupation() - 3.0).abs() < 1e-12);
    let s = compile_schedule(&spec, 4.0, 10).unwrap();
    let out = simulate_schedule(&s, &psi).unwrap();
    assert!((out.mean_occupation() - 3.0).abs() < 1e-9);
}

#[test]
fn trotter_error_shrinks_with_more_steps() {
    let spec = LatticeSpec::hopping_only(2, 3, 1.0).unwrap();
    let h = hubbard_spin_hamiltonian(&spec).unwrap().spectral();
    let single = occupied(&spec, &[(0, 1, Spin::Up)]);
    let pair = occupied(&spec, &[(0, 1, Spin::Up), (2, 2, Spin::Up)]);
    for psi in [single, pair] {
        let exact = h.evolve(4.0, &psi).unwrap();
        let infidelity: Vec<f64> = [5, 10, 20, 30]
            .iter()
            .map(|&steps| {
                let s = compile_schedule(&spec, 4.0, steps).unwrap();
                1.0 - fidelity(&exact, &simulate_schedule(&s, &psi).unwrap()).unwrap()
            })
            .collect();
        assert!(infidelity.windows(2).all(|w| w[1] < w[0]), "{infidelity:?}");
    }
}

#[test]
fn full_and_empty_superposition_is_stationary() {
    let spec = LatticeSpec::hopping_only(2, 3, 1.0).unwrap();
    let n = spec.n_qubits();
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    amps[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amps[(1 << n) - 1] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let psi = StateVector::new(n, amps).unwrap();
    let s = compile_schedule(&spec, 4.0, 10).unwrap();
    assert!(fidelity(&psi, &simulate_schedule(&s, &psi).unwrap()).unwrap() > 1.0 - 1e-12);
}

#[test]
fn vacuum_is_stationary() {
    let spec = LatticeSpec::hopping_only(2, 2, 1.0).unwrap();
    let vacuum = StateVector::basis(8, 255).unwrap();
    let s = compile_schedule(&spec, 3.0, 2).unwrap();
    assert!(fidelity(&vacuum, &simulate_schedule(&s, &vacuum).unwrap()).unwrap() > 1.0 - 1e-12);
}
