//! Dense Hermitian operators and their spectral propagators.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{guard_qubits, Error, Result};
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::state::StateVector;

/// Relative tolerance for the Hermiticity check.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    n_qubits: usize,
    matrix: DMatrix<Complex64>,
}

impl HermitianOperator {
    pub fn from_matrix(n_qubits: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        guard_qubits(n_qubits)?;
        let dim = 1usize << n_qubits;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::validation(format!(
                "{}x{} matrix does not act on {n_qubits} qubits",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let scale = matrix.iter().fold(0.0f64, |m, z| m.max(z.norm())).max(1.0);
        for r in 0..dim {
            for c in r..dim {
                if (matrix[(r, c)] - matrix[(c, r)].conj()).norm() > HERMITIAN_TOLERANCE * scale {
                    return Err(Error::validation(format!("operator is not Hermitian at ({r}, {c})")));
                }
            }
        }
        Ok(Self { n_qubits, matrix })
    }

    pub fn zeros(n_qubits: usize) -> Result<Self> {
        guard_qubits(n_qubits)?;
        let dim = 1usize << n_qubits;
        Ok(Self { n_qubits, matrix: DMatrix::zeros(dim, dim) })
    }

    pub fn from_pauli_sum(sum: &PauliSum) -> Result<Self> {
        Self::from_matrix(sum.n_qubits(), sum.to_matrix()?)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn apply(&self, psi: &StateVector) -> Result<Vec<Complex64>> {
        if psi.n_qubits() != self.n_qubits {
            return Err(Error::validation("operator and state sizes differ"));
        }
        let v = DVector::from_column_slice(psi.amplitudes());
        Ok((&self.matrix * v).iter().copied().collect())
    }

    /// Largest elementwise deviation `max |A_rc − B_rc|`.
    pub fn max_deviation(&self, other: &HermitianOperator) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::validation("operators of different dimension"));
        }
        Ok(max_abs_diff(&self.matrix, &other.matrix))
    }

    /// Spectral decomposition, factored over the connected blocks of the
    /// operator's sparsity pattern so that number-conserving Hamiltonians
    /// diagonalize sector by sector.
    pub fn spectral(&self) -> SpectralDecomposition {
        let dim = self.dim();
        let mut blocks = connected_blocks(&self.matrix);
        blocks.sort_by_key(|b| b[0]);
        let blocks = blocks
            .into_iter()
            .map(|indices| {
                let k = indices.len();
                let sub = DMatrix::from_fn(k, k, |r, c| self.matrix[(indices[r], indices[c])]);
                let eig = sub.symmetric_eigen();
                SpectralBlock { indices, values: eig.eigenvalues, vectors: eig.eigenvectors }
            })
            .collect();
        SpectralDecomposition { n_qubits: self.n_qubits, dim, blocks }
    }
}

fn connected_blocks(m: &DMatrix<Complex64>) -> Vec<Vec<usize>> {
    let dim = m.nrows();
    let mut parent: Vec<usize> = (0..dim).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for c in 0..dim {
        let col = m.column(c);
        for r in 0..c {
            if col[r] != Complex64::new(0.0, 0.0) {
                let (a, b) = (find(&mut parent, r), find(&mut parent, c));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); dim];
    for x in 0..dim {
        let root = find(&mut parent, x);
        groups[root].push(x);
    }
    groups.into_iter().filter(|g| !g.is_empty()).collect()
}

pub(crate) fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter().zip(b.iter()).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

#[derive(Debug, Clone)]
struct SpectralBlock {
    indices: Vec<usize>,
    values: DVector<f64>,
    vectors: DMatrix<Complex64>,
}

/// Eigen-factored Hermitian operator; evolves states exactly for any duration.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    n_qubits: usize,
    dim: usize,
    blocks: Vec<SpectralBlock>,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.blocks.iter().flat_map(|b| b.values.iter().copied()).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// Number of independent blocks found in the sparsity pattern.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// `exp(−i·H·duration)·ψ`.
    pub fn evolve(&self, duration: f64, psi: &StateVector) -> Result<StateVector> {
        if psi.n_qubits() != self.n_qubits {
            return Err(Error::validation("operator and state sizes differ"));
        }
        if !(duration >= 0.0) {
            return Err(Error::validation(format!("duration must be non-negative, got {duration}")));
        }
        let amps = psi.amplitudes();
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for b in &self.blocks {
            let local = DVector::from_iterator(b.indices.len(), b.indices.iter().map(|&i| amps[i]));
            let mut coeffs = b.vectors.ad_mul(&local);
            for (c, &e) in coeffs.iter_mut().zip(b.values.iter()) {
                *c *= Complex64::from_polar(1.0, -e * duration);
            }
            let back = &b.vectors * coeffs;
            for (&i, v) in b.indices.iter().zip(back.iter()) {
                out[i] = *v;
            }
        }
        StateVector::normalized(self.n_qubits, out)
    }

    /// Dense `exp(−i·H·duration)`.
    pub fn unitary(&self, duration: f64) -> DMatrix<Complex64> {
        let mut u = DMatrix::zeros(self.dim, self.dim);
        for b in &self.blocks {
            let k = b.indices.len();
            let phases = DMatrix::from_fn(k, k, |r, c| {
                if r == c {
                    Complex64::from_polar(1.0, -b.values[r] * duration)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            let local = &b.vectors * phases * b.vectors.adjoint();
            for r in 0..k {
                for c in 0..k {
                    u[(b.indices[r], b.indices[c])] = local[(r, c)];
                }
            }
        }
        u
    }
}

/// Dense realization of a Hermitian Pauli string (real coefficient).
pub fn pauli_dense(p: &PauliString) -> Result<HermitianOperator> {
    if p.coefficient().im != 0.0 {
        return Err(Error::validation("a Pauli string with complex weight is not Hermitian"));
    }
    HermitianOperator::from_matrix(p.n_qubits(), p.to_matrix()?)
}

/// `exp(−i·h·duration)·ψ` through the Hermitian eigendecomposition.
pub fn evolve_static(h: &HermitianOperator, duration: f64, psi: &StateVector) -> Result<StateVector> {
    if duration == 0.0 {
        if psi.n_qubits() != h.n_qubits() {
            return Err(Error::validation("operator and state sizes differ"));
        }
        return Ok(psi.clone());
    }
    h.spectral().evolve(duration, psi)
}

/// `exp(−i·angle·σ_j^a σ_k^b)` on an `n`-qubit register; `j`, `k` are 0-based.
pub fn two_local_unitary(
    axis_j: Pauli,
    axis_k: Pauli,
    angle: f64,
    j: usize,
    k: usize,
    n: usize,
) -> Result<DMatrix<Complex64>> {
    if j == k {
        return Err(Error::validation("two-local unitary needs distinct qubits"));
    }
    for axis in [axis_j, axis_k] {
        if !matches!(axis, Pauli::X | Pauli::Y) {
            return Err(Error::validation(format!("two-local axis must be X or Y, got {axis}")));
        }
    }
    let p = PauliString::from_sites(n, &[(j, axis_j), (k, axis_k)])?;
    let generator = p.to_matrix()?;
    let dim = generator.nrows();
    let (s, c) = angle.sin_cos();
    Ok(DMatrix::identity(dim, dim) * Complex64::new(c, 0.0) - generator * Complex64::new(0.0, s))
}
