//! Fermi-Hubbard lattices on a spin chain.
//!
//! An ℓ×h lattice (ℓ columns, h rows) with two spin species is flattened
//! row-major into a chain of 2ℓh qubits: fermion site `j = kℓ + c` (row `k`
//! from 0, column `c` from 1) places spin-up at chain position `2j − 1` and
//! spin-down at `2j`. Chain positions are 1-based.
//!
//! The Jordan–Wigner map uses `b_j = [Π_{l<j} (−Z_l)]·(X_j − iY_j)/2`, so an
//! occupied mode is a qubit in `|0⟩` (`Z = +1`), the vacuum is `|1…1⟩`, and
//! `b_j†b_j = (I + Z_j)/2`.

mod block;
mod compile;
mod export;
mod timing;

pub use block::{AnalogBlock, BlockAngle, BlockKind, BlockTerm};
pub use compile::{
    compile_coulomb, compile_horizontal, compile_schedule, compile_vertical, hop_groups, simulate_schedule,
    vertical_groups, HopGroup, Schedule,
};
pub use export::{block_phases, drive_settings_for, export_schedule, LinkPhases, EXPORT_HEADER};
pub use timing::{block_count, timing, BlockCounts, TimingReport};

use crate::error::{Error, Result};
use crate::operator::HermitianOperator;
use crate::pauli::{Pauli, PauliString, PauliSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSpec {
    cols: usize,
    rows: usize,
    hopping: f64,
    onsite: f64,
    include_coulomb: bool,
}

impl LatticeSpec {
    /// Any shape with at least one site is accepted here; schedules and
    /// block counts additionally require `2 ≤ cols ≤ rows`.
    pub fn new(cols: usize, rows: usize, hopping: f64, onsite: f64, include_coulomb: bool) -> Result<Self> {
        if cols == 0 || rows == 0 {
            return Err(Error::validation(format!("{cols}x{rows} lattice has no sites")));
        }
        if !hopping.is_finite() || !onsite.is_finite() {
            return Err(Error::validation("hopping and on-site amplitudes must be finite"));
        }
        Ok(Self { cols, rows, hopping, onsite, include_coulomb })
    }

    /// Hopping-only lattice with amplitude `hopping`.
    pub fn hopping_only(cols: usize, rows: usize, hopping: f64) -> Result<Self> {
        Self::new(cols, rows, hopping, 0.0, false)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn hopping(&self) -> f64 {
        self.hopping
    }

    pub fn onsite(&self) -> f64 {
        self.onsite
    }

    pub fn include_coulomb(&self) -> bool {
        self.include_coulomb
    }

    pub fn n_qubits(&self) -> usize {
        2 * self.cols * self.rows
    }

    /// The shapes for which the block-count formulas hold: `2 ≤ ℓ ≤ h`.
    pub fn check_schedulable(&self) -> Result<()> {
        if self.cols < 2 || self.cols > self.rows {
            return Err(Error::validation(format!(
                "schedules need 2 ≤ columns ≤ rows, got {} columns and {} rows",
                self.cols, self.rows
            )));
        }
        Ok(())
    }
}

/// Chain position (1-based) of spin `spin` at row `row` (0-based), column `col` (1-based).
pub fn spinless_index(spec: &LatticeSpec, row: usize, col: usize, spin: Spin) -> Result<usize> {
    if row >= spec.rows || col == 0 || col > spec.cols {
        return Err(Error::validation(format!(
            "site (row {row}, column {col}) outside a {}x{} lattice",
            spec.cols, spec.rows
        )));
    }
    let site = row * spec.cols + col;
    Ok(match spin {
        Spin::Up => 2 * site - 1,
        Spin::Down => 2 * site,
    })
}

/// A hopping pair of chain positions, `from < to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hop {
    pub from: usize,
    pub to: usize,
}

impl Hop {
    pub fn span(&self) -> usize {
        self.to - self.from
    }
}

/// Neighbors along a row: same spin, adjacent columns (stride 2 on the chain).
pub fn horizontal_hops(spec: &LatticeSpec) -> Vec<Hop> {
    let mut hops = Vec::new();
    for row in 0..spec.rows {
        for col in 1..spec.cols {
            for spin in [Spin::Up, Spin::Down] {
                let from = spinless_index(spec, row, col, spin).expect("in range");
                hops.push(Hop { from, to: from + 2 });
            }
        }
    }
    hops.sort();
    hops
}

/// Neighbors along a column: same spin, adjacent rows (stride 2ℓ on the chain).
pub fn vertical_hops(spec: &LatticeSpec) -> Vec<Hop> {
    let stride = 2 * spec.cols;
    (1..=stride * (spec.rows - 1)).map(|from| Hop { from, to: from + stride }).collect()
}

/// `b_j†b_k + b_k†b_j` for 1-based `j < k` with `k − j` even, as the strings
/// `−½ X_j Z…Z X_k` and `−½ Y_j Z…Z Y_k`.
pub fn jw_hopping_string(j: usize, k: usize, n_qubits: usize) -> Result<(PauliString, PauliString)> {
    if j == 0 || k <= j || k > n_qubits {
        return Err(Error::validation(format!(
            "hopping ({j}, {k}) needs 1 ≤ j < k ≤ {n_qubits}"
        )));
    }
    if (k - j) % 2 == 1 {
        return Err(Error::validation(format!(
            "hopping ({j}, {k}) spans an odd distance; the two-string form needs an even one"
        )));
    }
    let build = |end: Pauli| -> Result<PauliString> {
        let mut sites = vec![(j - 1, end), (k - 1, end)];
        sites.extend((j..k - 1).map(|q| (q, Pauli::Z)));
        Ok(PauliString::from_sites(n_qubits, &sites)?.scaled(-0.5))
    };
    Ok((build(Pauli::X)?, build(Pauli::Y)?))
}

/// Hopping part `𝒜 Σ (b†b + h.c.)` as Pauli strings.
pub fn hopping_terms(spec: &LatticeSpec) -> Result<PauliSum> {
    let n = spec.n_qubits();
    let mut sum = PauliSum::new(n);
    for hop in horizontal_hops(spec).into_iter().chain(vertical_hops(spec)) {
        let (xs, ys) = jw_hopping_string(hop.from, hop.to, n)?;
        sum.push(xs.scaled(spec.hopping))?;
        sum.push(ys.scaled(spec.hopping))?;
    }
    Ok(sum)
}

/// On-site part `(ℬ/4) Σ_j (Z_{2j−1} + I)(Z_{2j} + I)` as Pauli strings.
pub fn onsite_terms(spec: &LatticeSpec) -> Result<PauliSum> {
    let n = spec.n_qubits();
    let mut sum = PauliSum::new(n);
    let w = spec.onsite / 4.0;
    for site in 1..=spec.cols * spec.rows {
        let (up, down) = (2 * site - 2, 2 * site - 1);
        sum.push(PauliString::from_sites(n, &[(up, Pauli::Z), (down, Pauli::Z)])?.scaled(w))?;
        sum.push(PauliString::from_sites(n, &[(up, Pauli::Z)])?.scaled(w))?;
        sum.push(PauliString::from_sites(n, &[(down, Pauli::Z)])?.scaled(w))?;
        sum.push(PauliString::identity(n).scaled(w))?;
    }
    Ok(sum)
}

/// Dense spin Hamiltonian of the lattice (hopping, plus on-site if enabled).
pub fn hubbard_spin_hamiltonian(spec: &LatticeSpec) -> Result<HermitianOperator> {
    crate::error::guard_qubits(spec.n_qubits())?;
    let mut sum = hopping_terms(spec)?;
    if spec.include_coulomb {
        sum.extend(onsite_terms(spec)?)?;
    }
    HermitianOperator::from_pauli_sum(&sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spinless_indices_of_small_lattice() {
        let l = LatticeSpec::hopping_only(2, 3, 1.0).unwrap();
        assert_eq!(spinless_index(&l, 0, 1, Spin::Up).unwrap(), 1);
        assert_eq!(spinless_index(&l, 1, 2, Spin::Up).unwrap(), 7);
        assert_eq!(spinless_index(&l, 2, 1, Spin::Up).unwrap(), 9);
        assert_eq!(spinless_index(&l, 2, 2, Spin::Down).unwrap(), 12);
        assert!(spinless_index(&l, 3, 1, Spin::Up).is_err());
        assert!(spinless_index(&l, 0, 0, Spin::Up).is_err());
    }

    #[test]
    fn hop_counts_of_two_by_two() {
        // per row: (1,3), (2,4); between rows: positions 1..4 → +4
        let l = LatticeSpec::hopping_only(2, 2, 1.0).unwrap();
        assert_eq!(horizontal_hops(&l), vec![
            Hop { from: 1, to: 3 },
            Hop { from: 2, to: 4 },
            Hop { from: 5, to: 7 },
            Hop { from: 6, to: 8 },
        ]);
        assert_eq!(vertical_hops(&l).len(), 4);
        assert_eq!(hopping_terms(&l).unwrap().len(), 16);
    }

    #[test]
    fn three_site_hopping_string() {
        let (xs, ys) = jw_hopping_string(1, 3, 3).unwrap();
        assert_eq!(xs, "XZX".parse::<PauliString>().unwrap().scaled(-0.5));
        assert_eq!(ys, "YZY".parse::<PauliString>().unwrap().scaled(-0.5));
    }

    #[test]
    fn odd_span_rejected() {
        assert!(jw_hopping_string(1, 2, 3).is_err());
    }

    #[test]
    fn single_site_lattice_has_zero_hopping() {
        let l = LatticeSpec::hopping_only(1, 1, 1.0).unwrap();
        let h = hubbard_spin_hamiltonian(&l).unwrap();
        assert!(h.matrix().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn schedulable_shapes() {
        assert!(LatticeSpec::hopping_only(2, 3, 1.0).unwrap().check_schedulable().is_ok());
        assert!(LatticeSpec::hopping_only(3, 2, 1.0).unwrap().check_schedulable().is_err());
        assert!(LatticeSpec::hopping_only(1, 3, 1.0).unwrap().check_schedulable().is_err());
    }
}
