use std::collections::BTreeSet;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::phase::PiPhase;
use crate::state::StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// Hopping core: disjoint two-local terms at the Trotter angle.
    TypeA,
    /// Quarter-turn two-local dressing.
    TypeB,
    /// On-site interaction realized as an XX analog block.
    CoulombA,
    /// Single-qubit (digital) rotations.
    LocalRotation,
}

impl BlockKind {
    pub fn label(&self) -> &'static str {
        match self {
            BlockKind::TypeA => "type_a",
            BlockKind::TypeB => "type_b",
            BlockKind::CoulombA => "coulomb_a",
            BlockKind::LocalRotation => "local",
        }
    }

    pub fn is_analog(&self) -> bool {
        !matches!(self, BlockKind::LocalRotation)
    }
}

/// One generator term; positions are 1-based chain indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockTerm {
    /// `σ_link^first σ_{link+1}^second`
    Pair { link: usize, first: Pauli, second: Pauli },
    Single { site: usize, axis: Pauli },
}

impl BlockTerm {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            BlockTerm::Pair { link, .. } => vec![link, link + 1],
            BlockTerm::Single { site, .. } => vec![site],
        }
    }

    pub fn string(&self, n_qubits: usize) -> Result<PauliString> {
        match *self {
            BlockTerm::Pair { link, first, second } if link >= 1 => {
                PauliString::from_sites(n_qubits, &[(link - 1, first), (link, second)])
            }
            BlockTerm::Single { site, axis } if site >= 1 => PauliString::from_sites(n_qubits, &[(site - 1, axis)]),
            _ => Err(Error::validation("block terms use 1-based positions")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BlockAngle {
    /// Exact multiple of π.
    Pi(PiPhase),
    Radians(f64),
}

impl BlockAngle {
    pub fn radians(&self) -> f64 {
        match self {
            BlockAngle::Pi(p) => p.radians(),
            BlockAngle::Radians(r) => *r,
        }
    }

    pub fn over_pi(&self) -> f64 {
        match self {
            BlockAngle::Pi(p) => *p.ratio().numer() as f64 / *p.ratio().denom() as f64,
            BlockAngle::Radians(r) => r / PI,
        }
    }
}

/// `exp(∓i·angle·Σ terms)`, the lower sign when `dagger` is set. Terms commute.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalogBlock {
    pub kind: BlockKind,
    pub terms: Vec<BlockTerm>,
    pub angle: BlockAngle,
    pub dagger: bool,
}

impl AnalogBlock {
    /// Angle with the dagger folded in.
    pub fn signed_angle(&self) -> f64 {
        if self.dagger {
            -self.angle.radians()
        } else {
            self.angle.radians()
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        self.terms.iter().flat_map(|t| t.qubits()).collect()
    }

    /// No qubit is touched by two terms.
    pub fn is_disjoint(&self) -> bool {
        let q = self.qubits();
        q.iter().collect::<BTreeSet<_>>().len() == q.len()
    }

    pub fn generator(&self, n_qubits: usize) -> Result<PauliSum> {
        let mut sum = PauliSum::new(n_qubits);
        for t in &self.terms {
            sum.push(t.string(n_qubits)?)?;
        }
        Ok(sum)
    }

    /// The block as `(generator, angle)` rotations applied in order.
    pub fn rotations(&self, n_qubits: usize) -> Result<Vec<(PauliString, f64)>> {
        let theta = self.signed_angle();
        self.terms.iter().map(|t| Ok((t.string(n_qubits)?, theta))).collect()
    }

    pub fn apply(&self, psi: &mut StateVector) -> Result<()> {
        for (p, theta) in self.rotations(psi.n_qubits())? {
            psi.apply_pauli_rotation(&p, theta)?;
        }
        Ok(())
    }

    /// Dense unitary, composed from exact two-by-two rotations.
    pub fn unitary(&self, n_qubits: usize) -> Result<DMatrix<Complex64>> {
        let dim = 1usize << n_qubits;
        let mut u = DMatrix::<Complex64>::identity(dim, dim);
        let (s, c) = self.signed_angle().sin_cos();
        for t in &self.terms {
            let p = t.string(n_qubits)?.to_matrix()?;
            let r = DMatrix::<Complex64>::identity(dim, dim) * Complex64::new(c, 0.0) - p * Complex64::new(0.0, s);
            u = r * u;
        }
        Ok(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(link: usize) -> BlockTerm {
        BlockTerm::Pair { link, first: Pauli::X, second: Pauli::X }
    }

    #[test]
    fn dagger_negates_angle() {
        let b = AnalogBlock {
            kind: BlockKind::TypeB,
            terms: vec![pair(1)],
            angle: BlockAngle::Pi(PiPhase::new(1, 4)),
            dagger: true,
        };
        assert!((b.signed_angle() + PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn overlapping_terms_detected() {
        let b = AnalogBlock {
            kind: BlockKind::TypeA,
            terms: vec![pair(1), pair(2)],
            angle: BlockAngle::Radians(0.1),
            dagger: false,
        };
        assert!(!b.is_disjoint());
    }

    #[test]
    fn block_and_inverse_cancel() {
        let mut b = AnalogBlock {
            kind: BlockKind::TypeB,
            terms: vec![pair(1), BlockTerm::Pair { link: 3, first: Pauli::Y, second: Pauli::X }],
            angle: BlockAngle::Pi(PiPhase::new(1, 4)),
            dagger: false,
        };
        let u = b.unitary(4).unwrap();
        b.dagger = true;
        let v = b.unitary(4).unwrap();
        let id = DMatrix::<Complex64>::identity(16, 16);
        assert!(crate::operator::max_abs_diff(&(v * u), &id) < 1e-14);
    }
}
