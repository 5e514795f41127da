//! Self-checks against independently built dense oracles.
//!
//! Every function returns the worst elementwise deviation it found, so
//! callers pick their own tolerance. Dense oracles are assembled from
//! explicit Kronecker products of 2×2 blocks rather than the state-vector
//! kernels they are meant to check.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{guard_qubits, Error, Result};
use crate::hubbard::{hopping_terms, jw_hopping_string, AnalogBlock, BlockKind, LatticeSpec, Schedule};
use crate::pauli::{Pauli, PauliString};

type Matrix = DMatrix<Complex64>;

fn letter(p: Pauli) -> Matrix {
    let m = p.matrix();
    Matrix::from_fn(2, 2, |r, c| m[r][c])
}

/// Kronecker product of per-qubit 2×2 factors, qubit 0 leftmost.
fn kron_all(factors: &[Matrix]) -> Matrix {
    factors.iter().fold(Matrix::identity(1, 1), |acc, f| acc.kronecker(f))
}

/// Dense Pauli word from `(1-based site, letter)` pairs.
fn word(n: usize, sites: &[(usize, Pauli)]) -> Matrix {
    let factors: Vec<Matrix> = (1..=n)
        .map(|q| letter(sites.iter().find(|(s, _)| *s == q).map_or(Pauli::I, |(_, p)| *p)))
        .collect();
    kron_all(&factors)
}

/// `exp(−i(π/4)σ_j^a σ_{j+1}^a) = (I − iσσ)/√2`, `j` 1-based.
fn quarter_turn(n: usize, j: usize, axis: Pauli) -> Matrix {
    let p = word(n, &[(j, axis), (j + 1, axis)]);
    let dim = p.nrows();
    (Matrix::identity(dim, dim) - p * Complex64::new(0.0, 1.0)) * Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
}

fn max_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.iter().zip(b.iter()).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

fn conjugate(u: &Matrix, a: &Matrix) -> Matrix {
    u * a * u.adjoint()
}

/// Dense annihilator `b_j = Π_{i<j}(−Z_i)·(X_j − iY_j)/2` on `n` qubits, `j` 1-based.
pub fn jw_annihilator(j: usize, n: usize) -> Result<Matrix> {
    guard_qubits(n)?;
    if j == 0 || j > n {
        return Err(Error::Validation(format!("mode {j} outside {n} qubits")));
    }
    let lower = (letter(Pauli::X) - letter(Pauli::Y) * Complex64::new(0.0, 1.0)) * Complex64::new(0.5, 0.0);
    let factors: Vec<Matrix> = (1..=n)
        .map(|q| match q.cmp(&j) {
            std::cmp::Ordering::Less => -letter(Pauli::Z),
            std::cmp::Ordering::Equal => lower.clone(),
            std::cmp::Ordering::Greater => letter(Pauli::I),
        })
        .collect();
    Ok(kron_all(&factors))
}

/// Hopping strings and canonical anticommutators against the dense
/// annihilators, for every register size `2..=max_qubits`.
pub fn jordan_wigner_deviation(max_qubits: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for n in 2..=max_qubits {
        let dim = 1usize << n;
        let b: Vec<Matrix> = (1..=n).map(|j| jw_annihilator(j, n)).collect::<Result<_>>()?;
        for j in 0..n {
            for k in 0..n {
                let anti = &b[j] * b[k].adjoint() + b[k].adjoint() * &b[j];
                let expect = if j == k { Matrix::identity(dim, dim) } else { Matrix::zeros(dim, dim) };
                worst = worst.max(max_diff(&anti, &expect));
                worst = worst.max(max_diff(&(&b[j] * &b[k] + &b[k] * &b[j]), &Matrix::zeros(dim, dim)));
            }
        }
        for j in 1..=n {
            for k in (j + 2..=n).step_by(2) {
                let oracle = b[j - 1].adjoint() * &b[k - 1] + b[k - 1].adjoint() * &b[j - 1];
                let (xs, ys) = jw_hopping_string(j, k, n)?;
                worst = worst.max(max_diff(&(xs.to_matrix()? + ys.to_matrix()?), &oracle));
            }
        }
    }
    Ok(worst)
}

/// Quarter-turn conjugation rules on a six-qubit register: the single-link
/// rules, the two-link rules that grow a string by one site per side, and
/// the five-site column dressing that builds `σ Z Z Z σ` from a core on the
/// middle link.
pub fn conjugation_identity_deviation() -> f64 {
    use Pauli::{X, Y, Z};
    let n = 6;
    let (j, k) = (3, 4);
    let cases: Vec<(Matrix, Matrix, Matrix)> = vec![
        (quarter_turn(n, j, Y), word(n, &[(j, X)]), -word(n, &[(j, Z), (j + 1, Y)])),
        (quarter_turn(n, j, X), word(n, &[(j, Y)]), word(n, &[(j, Z), (j + 1, X)])),
        (
            quarter_turn(n, j - 1, Y) * quarter_turn(n, k, Y),
            word(n, &[(j, X), (k, X)]),
            word(n, &[(j - 1, Y), (j, Z), (k, Z), (k + 1, Y)]),
        ),
        (
            quarter_turn(n, j - 1, X) * quarter_turn(n, k, X),
            word(n, &[(j, Y), (k, Y)]),
            word(n, &[(j - 1, X), (j, Z), (k, Z), (k + 1, X)]),
        ),
        (
            quarter_turn(n, 1, X) * quarter_turn(n, 4, X) * quarter_turn(n, 3, Y).adjoint(),
            word(n, &[(2, Y), (3, X)]),
            word(n, &[(1, X), (2, Z), (3, Z), (4, Z), (5, X)]),
        ),
        (
            quarter_turn(n, 1, Y) * quarter_turn(n, 4, Y) * quarter_turn(n, 3, X),
            word(n, &[(2, X), (3, Y)]),
            word(n, &[(1, Y), (2, Z), (3, Z), (4, Z), (5, Y)]),
        ),
    ];
    cases.iter().map(|(u, a, expect)| max_diff(&conjugate(u, a), expect)).fold(0.0, f64::max)
}

fn inverse(block: &AnalogBlock) -> AnalogBlock {
    AnalogBlock { dagger: !block.dagger, ..block.clone() }
}

/// `(dressing, core, undressing)`
type DressedCore<'a> = (&'a [AnalogBlock], &'a AnalogBlock, &'a [AnalogBlock]);

/// Splits a step into dressed cores.
fn dressed_cores(blocks: &[AnalogBlock]) -> Result<Vec<DressedCore<'_>>> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < blocks.len() {
        let core = (start..blocks.len())
            .find(|&i| blocks[i].kind == BlockKind::TypeA)
            .ok_or_else(|| Error::Compilation("dressing blocks without a core".into()))?;
        let m = core - start;
        if core + 1 + m > blocks.len() {
            return Err(Error::Compilation("core is missing its undressing".into()));
        }
        out.push((&blocks[start..core], &blocks[core], &blocks[core + 1..core + 1 + m]));
        start = core + 1 + m;
    }
    Ok(out)
}

type Sparse = BTreeMap<usize, Complex64>;

/// `exp(−i·angle·P)` on a sparse vector.
fn rotate(v: &Sparse, p: &PauliString, angle: f64) -> Sparse {
    let act = p.action();
    let (s, c) = (angle * p.coefficient().re).sin_cos();
    let mut out = Sparse::new();
    for (&x, &a) in v {
        let (y, phase) = act.apply_basis(x);
        *out.entry(x).or_default() += a * c;
        *out.entry(y).or_default() += a * phase * Complex64::new(0.0, -s);
    }
    out.retain(|_, a| a.norm() > 0.0);
    out
}

fn apply_sum(v: &Sparse, terms: &[PauliString]) -> Sparse {
    let mut out = Sparse::new();
    for p in terms {
        let act = p.action();
        for (&x, &a) in v {
            let (y, phase) = act.apply_basis(x);
            *out.entry(y).or_default() += a * phase * p.coefficient();
        }
    }
    out
}

/// Rebuilds the hopping Hamiltonian from a compiled step as
/// `(𝒜/2)·Σ D† G D` over every dressed core and compares it, column by
/// column, with the direct Jordan–Wigner sum. Quarter-turn dressings keep a
/// basis vector sparse, so columns are propagated as sparse vectors. An
/// undressing sequence that is not the exact inverse of its dressing is a
/// compilation error.
pub fn compiled_hopping_deviation(spec: &LatticeSpec) -> Result<f64> {
    let n = spec.n_qubits();
    guard_qubits(n)?;
    let hopping_only = LatticeSpec::hopping_only(spec.cols(), spec.rows(), spec.hopping())?;
    let schedule: Schedule = crate::hubbard::compile_schedule(&hopping_only, 1.0, 1)?;
    let triples = dressed_cores(schedule.step_blocks())?;
    let rotations = |blocks: &[AnalogBlock]| -> Result<Vec<(PauliString, f64)>> {
        let mut out = Vec::new();
        for b in blocks {
            out.extend(b.rotations(n)?);
        }
        Ok(out)
    };
    let mut plans = Vec::with_capacity(triples.len());
    for (dress, core, undress) in &triples {
        let undo: Vec<AnalogBlock> = dress.iter().rev().map(inverse).collect();
        if undo.as_slice() != *undress {
            return Err(Error::Compilation("undressing does not mirror its dressing".into()));
        }
        plans.push((rotations(dress)?, core.generator(n)?, rotations(&undo)?));
    }
    let direct = hopping_terms(&hopping_only)?;
    let weight = spec.hopping() / 2.0;
    let mut worst: f64 = 0.0;
    for x in 0..1usize << n {
        let e_x = Sparse::from([(x, Complex64::new(1.0, 0.0))]);
        let expect = apply_sum(&e_x, direct.terms());
        let mut got = Sparse::new();
        for (dress, generator, undo) in &plans {
            let mut v = e_x.clone();
            for (p, angle) in dress {
                v = rotate(&v, p, *angle);
            }
            v = apply_sum(&v, generator.terms());
            for (p, angle) in undo {
                v = rotate(&v, p, *angle);
            }
            for (y, a) in v {
                *got.entry(y).or_default() += a * weight;
            }
        }
        for (y, a) in &got {
            worst = worst.max((a - expect.get(y).copied().unwrap_or_default()).norm());
        }
        for (y, e) in &expect {
            worst = worst.max((got.get(y).copied().unwrap_or_default() - e).norm());
        }
    }
    Ok(worst)
}

/// `dense(p)·dense(q)` against `dense(p·q)` built from the symbolic product.
pub fn pauli_product_deviation(p: &PauliString, q: &PauliString) -> Result<f64> {
    let dense = |s: &PauliString| -> Matrix {
        let factors: Vec<Matrix> = s.letters().iter().map(|&l| letter(l)).collect();
        kron_all(&factors) * s.coefficient()
    };
    let pq = p.product(q)?;
    Ok(max_diff(&(dense(p) * dense(q)), &dense(&pq)))
}
