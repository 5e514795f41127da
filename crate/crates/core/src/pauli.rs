//! Pauli letters and weighted Pauli strings.
//!
//! A basis index stores qubit 0 in its most significant bit, so the dense
//! matrix of a string is the Kronecker product `letters[0] ⊗ letters[1] ⊗ …`.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{guard_qubits, Error, Result};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const IM: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// Single-qubit product `self · other = phase · letter`.
    pub fn mul(self, other: Pauli) -> (Complex64, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (ONE, p),
            (a, b) if a == b => (ONE, I),
            (X, Y) => (IM, Z),
            (Y, X) => (-IM, Z),
            (Y, Z) => (IM, X),
            (Z, Y) => (-IM, X),
            (Z, X) => (IM, Y),
            (X, Z) => (-IM, Y),
            _ => unreachable!(),
        }
    }

    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let z = Complex64::new(0.0, 0.0);
        match self {
            Pauli::I => [[ONE, z], [z, ONE]],
            Pauli::X => [[z, ONE], [ONE, z]],
            Pauli::Y => [[z, -IM], [IM, z]],
            Pauli::Z => [[ONE, z], [z, -ONE]],
        }
    }

    fn flips(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    fn phases(self) -> bool {
        matches!(self, Pauli::Y | Pauli::Z)
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

impl TryFrom<char> for Pauli {
    type Error = Error;

    fn try_from(c: char) -> Result<Self> {
        match c.to_ascii_uppercase() {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::validation(format!("not a Pauli letter: {other:?}"))),
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Tensor product of Pauli letters with a complex weight.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    letters: Vec<Pauli>,
    coefficient: Complex64,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>, coefficient: Complex64) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::validation("a Pauli string needs at least one qubit"));
        }
        Ok(Self { letters, coefficient })
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self { letters: vec![Pauli::I; n_qubits.max(1)], coefficient: ONE }
    }

    /// Builds a unit-weight string from `(qubit, letter)` pairs; qubits are 0-based.
    pub fn from_sites(n_qubits: usize, sites: &[(usize, Pauli)]) -> Result<Self> {
        let mut letters = vec![Pauli::I; n_qubits];
        let mut seen = vec![false; n_qubits];
        for &(q, p) in sites {
            if q >= n_qubits {
                return Err(Error::validation(format!("qubit {q} outside a {n_qubits}-qubit register")));
            }
            if std::mem::replace(&mut seen[q], true) {
                return Err(Error::validation(format!("qubit {q} listed twice")));
            }
            letters[q] = p;
        }
        Self::new(letters, ONE)
    }

    pub fn n_qubits(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn letter(&self, qubit: usize) -> Pauli {
        self.letters[qubit]
    }

    pub fn coefficient(&self) -> Complex64 {
        self.coefficient
    }

    pub fn with_coefficient(mut self, coefficient: Complex64) -> Self {
        self.coefficient = coefficient;
        self
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        self.coefficient *= factor;
        self
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|&p| p == Pauli::I)
    }

    /// Qubits carrying a non-identity letter.
    pub fn support(&self) -> Vec<usize> {
        (0..self.letters.len()).filter(|&q| self.letters[q] != Pauli::I).collect()
    }

    pub fn product(&self, other: &PauliString) -> Result<PauliString> {
        if self.n_qubits() != other.n_qubits() {
            return Err(Error::validation(format!(
                "cannot multiply {}-qubit and {}-qubit strings",
                self.n_qubits(),
                other.n_qubits()
            )));
        }
        let mut coefficient = self.coefficient * other.coefficient;
        let letters = self
            .letters
            .iter()
            .zip(&other.letters)
            .map(|(&a, &b)| {
                let (phase, p) = a.mul(b);
                coefficient *= phase;
                p
            })
            .collect();
        Ok(PauliString { letters, coefficient })
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let clashes = self
            .letters
            .iter()
            .zip(&other.letters)
            .filter(|(&a, &b)| a != Pauli::I && b != Pauli::I && a != b)
            .count();
        clashes % 2 == 0
    }

    /// Bitmask form used by the state-vector kernels.
    pub fn action(&self) -> PauliAction {
        let n = self.letters.len();
        let mut flip = 0usize;
        let mut phase = 0usize;
        let mut ys = 0u32;
        for (q, &p) in self.letters.iter().enumerate() {
            let bit = 1usize << (n - 1 - q);
            if p.flips() {
                flip |= bit;
            }
            if p.phases() {
                phase |= bit;
            }
            if p == Pauli::Y {
                ys += 1;
            }
        }
        let y_phase = [ONE, IM, -ONE, -IM][(ys % 4) as usize];
        PauliAction { flip, phase, y_phase }
    }

    /// Dense `2^n × 2^n` matrix with the coefficient folded in.
    pub fn to_matrix(&self) -> Result<DMatrix<Complex64>> {
        guard_qubits(self.n_qubits())?;
        let dim = 1usize << self.n_qubits();
        let act = self.action();
        let mut m = DMatrix::zeros(dim, dim);
        for col in 0..dim {
            let (row, phase) = act.apply_basis(col);
            m[(row, col)] = phase * self.coefficient;
        }
        Ok(m)
    }

    /// `out += scale · P · input`, coefficient included.
    pub fn accumulate(&self, scale: Complex64, input: &[Complex64], out: &mut [Complex64]) {
        let act = self.action();
        let s = scale * self.coefficient;
        for (x, &amp) in input.iter().enumerate() {
            let (y, phase) = act.apply_basis(x);
            out[y] += s * phase * amp;
        }
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses a letter string such as `"XZIY"` with unit coefficient.
    fn from_str(s: &str) -> Result<Self> {
        let letters = s.chars().map(Pauli::try_from).collect::<Result<Vec<_>>>()?;
        Self::new(letters, ONE)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) ", self.coefficient)?;
        for p in &self.letters {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// A Pauli string as a signed permutation: `P|x⟩ = y_phase · (−1)^{|x ∧ phase|} |x ⊕ flip⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliAction {
    pub flip: usize,
    pub phase: usize,
    pub y_phase: Complex64,
}

impl PauliAction {
    #[inline]
    pub fn sign(&self, x: usize) -> f64 {
        if (x & self.phase).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    #[inline]
    pub fn apply_basis(&self, x: usize) -> (usize, Complex64) {
        (x ^ self.flip, self.y_phase * self.sign(x))
    }
}

/// Sum of Pauli strings on a common register.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<PauliString>,
}

impl PauliSum {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, terms: Vec::new() }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliString] {
        &self.terms
    }

    pub fn push(&mut self, term: PauliString) -> Result<()> {
        if term.n_qubits() != self.n_qubits {
            return Err(Error::validation(format!(
                "{}-qubit term added to a {}-qubit sum",
                term.n_qubits(),
                self.n_qubits
            )));
        }
        self.terms.push(term);
        Ok(())
    }

    pub fn extend(&mut self, other: PauliSum) -> Result<()> {
        other.terms.into_iter().try_for_each(|t| self.push(t))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_matrix(&self) -> Result<DMatrix<Complex64>> {
        guard_qubits(self.n_qubits)?;
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for term in &self.terms {
            let act = term.action();
            for col in 0..dim {
                let (row, phase) = act.apply_basis(col);
                m[(row, col)] += phase * term.coefficient();
            }
        }
        Ok(m)
    }
}
