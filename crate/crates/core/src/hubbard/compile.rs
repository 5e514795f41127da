//! Compilation of hopping and on-site evolution into analog blocks.
//!
//! A hop `(p, p + 2m)` contributes `−(𝒜/2)(T_xx + T_yy)` with
//! `T_aa = σ_p^a Z…Z σ_{p+2m}^a`. Each `T_aa` is reached from a two-local core
//! on the middle link by `m` stages of quarter-turn dressings that grow the
//! string one site per side: stage 0 dresses the link right of the core,
//! stage `s ≥ 1` dresses the links `s` steps further out on both sides. The
//! dressing axes alternate so that the outermost stage leaves axis `a` on
//! both endpoints. Conjugation signs are derived symbolically and fixed by
//! inverting stage 0 when needed, so that the dressed core equals `−T_aa`.

use num_complex::Complex64;

use super::block::{AnalogBlock, BlockAngle, BlockKind, BlockTerm};
use super::timing::{block_count, BlockCounts};
use super::{horizontal_hops, jw_hopping_string, vertical_hops, Hop, LatticeSpec};
use crate::error::{guard_qubits, Error, Result};
use crate::pauli::{Pauli, PauliString};
use crate::phase::PiPhase;
use crate::state::StateVector;

/// Hops of equal span whose chain intervals are pairwise disjoint.
#[derive(Debug, Clone, PartialEq)]
pub struct HopGroup {
    pub hops: Vec<Hop>,
}

fn other(axis: Pauli) -> Pauli {
    match axis {
        Pauli::X => Pauli::Y,
        Pauli::Y => Pauli::X,
        p => p,
    }
}

/// Row hops split by spin and by column parity so each family is disjoint:
/// up/odd, down/odd, up/even, down/even. Empty families are dropped.
pub fn horizontal_families(spec: &LatticeSpec) -> Vec<HopGroup> {
    let hops = horizontal_hops(spec);
    let width = 2 * spec.cols();
    let mut families = Vec::new();
    for column_parity in [0, 1] {
        for spin_parity in [1, 0] {
            let group: Vec<Hop> = hops
                .iter()
                .copied()
                .filter(|h| {
                    let offset = (h.from - 1) % width; // 2(c − 1) + (0 up, 1 down)
                    let spin = if offset.is_multiple_of(2) { 1 } else { 0 };
                    spin == spin_parity && (offset / 2) % 2 == column_parity
                })
                .collect();
            if !group.is_empty() {
                families.push(HopGroup { hops: group });
            }
        }
    }
    families
}

/// Column hops `(p, p + 2ℓ)` grouped by `p mod (2ℓ + 1)`; members of a group
/// start `2ℓ + 1` apart and so never overlap. Ordered by first member.
pub fn vertical_groups(spec: &LatticeSpec) -> Vec<HopGroup> {
    let modulus = 2 * spec.cols() + 1;
    let mut groups: Vec<HopGroup> = Vec::new();
    for hop in vertical_hops(spec) {
        let residue = (hop.from - 1) % modulus;
        match groups.get_mut(residue) {
            Some(g) => g.hops.push(hop),
            None => groups.push(HopGroup { hops: vec![hop] }),
        }
    }
    groups
}

/// All hop groups in emission order: row families, then column groups.
pub fn hop_groups(spec: &LatticeSpec) -> Vec<HopGroup> {
    let mut g = horizontal_families(spec);
    g.extend(vertical_groups(spec));
    g
}

/// Dressing stage `s` of a hop centred at chain position `centre`.
fn stage_terms(centre: usize, stage: usize, axis: Pauli) -> Vec<BlockTerm> {
    let pair = |link| BlockTerm::Pair { link, first: axis, second: axis };
    if stage == 0 {
        vec![pair(centre)]
    } else {
        vec![pair(centre - 1 - stage), pair(centre + stage)]
    }
}

struct HopPlan {
    half_span: usize,
    axes: Vec<Pauli>,
}

impl HopPlan {
    fn new(half_span: usize, target: Pauli) -> Self {
        let axes = (0..half_span)
            .map(|s| if (half_span - 1 - s).is_multiple_of(2) { target } else { other(target) })
            .collect();
        Self { half_span, axes }
    }

    fn core(&self, hop: &Hop) -> BlockTerm {
        let centre = hop.from + self.half_span;
        BlockTerm::Pair { link: centre - 1, first: self.axes[0], second: other(self.axes[0]) }
    }

    /// `D G D†` with `D = D_{m−1}⋯D_0`, each `D_s` a quarter turn or its inverse.
    fn conjugated_core(&self, hop: &Hop, inverted: &[bool], n: usize) -> Result<PauliString> {
        let centre = hop.from + self.half_span;
        let mut r = self.core(hop).string(n)?;
        for (s, &inv) in inverted.iter().enumerate() {
            let factor = if inv { Complex64::new(0.0, 1.0) } else { Complex64::new(0.0, -1.0) };
            for term in stage_terms(centre, s, self.axes[s]) {
                let p = term.string(n)?;
                if !p.commutes_with(&r) {
                    r = p.product(&r)?;
                    r = r.clone().with_coefficient(r.coefficient() * factor);
                }
            }
        }
        Ok(r)
    }
}

fn compile_group(group: &HopGroup, target: Pauli, theta: f64, n: usize) -> Result<Vec<AnalogBlock>> {
    let first = group.hops.first().ok_or_else(|| Error::Compilation("empty hop group".into()))?;
    let span = first.span();
    if span % 2 == 1 || group.hops.iter().any(|h| h.span() != span) {
        return Err(Error::Compilation("hop group mixes spans or has an odd span".into()));
    }
    let plan = HopPlan::new(span / 2, target);
    let mut inverted = vec![false; plan.half_span];
    let expect = |hop: &Hop, inverted: &[bool]| -> Result<f64> {
        let (xs, ys) = jw_hopping_string(hop.from, hop.to, n)?;
        let t = if target == Pauli::X { xs } else { ys };
        let r = plan.conjugated_core(hop, inverted, n)?;
        if r.letters() != t.letters() || r.coefficient().im != 0.0 {
            return Err(Error::Compilation(format!(
                "dressed core {r} does not reach the hopping string of ({}, {})",
                hop.from, hop.to
            )));
        }
        Ok(r.coefficient().re)
    };
    if expect(first, &inverted)? > 0.0 {
        inverted[0] = true;
    }
    for hop in &group.hops {
        if expect(hop, &inverted)? != -1.0 {
            return Err(Error::Compilation(format!("sign of hop ({}, {}) not fixed", hop.from, hop.to)));
        }
    }

    let quarter = BlockAngle::Pi(PiPhase::new(1, 4));
    let stage_block = |s: usize, dagger: bool| AnalogBlock {
        kind: BlockKind::TypeB,
        terms: group
            .hops
            .iter()
            .flat_map(|h| stage_terms(h.from + plan.half_span, s, plan.axes[s]))
            .collect(),
        angle: quarter,
        dagger,
    };
    let mut blocks = Vec::with_capacity(2 * plan.half_span + 1);
    for s in (0..plan.half_span).rev() {
        blocks.push(stage_block(s, !inverted[s]));
    }
    blocks.push(AnalogBlock {
        kind: BlockKind::TypeA,
        terms: group.hops.iter().map(|h| plan.core(h)).collect(),
        angle: BlockAngle::Radians(theta),
        dagger: false,
    });
    for s in 0..plan.half_span {
        blocks.push(stage_block(s, inverted[s]));
    }
    for b in &blocks {
        if !b.is_disjoint() {
            return Err(Error::Compilation(format!("{} block reuses a qubit", b.kind.label())));
        }
        if b.qubits().iter().any(|&q| q == 0 || q > n) {
            return Err(Error::Compilation("block leaves the chain".into()));
        }
    }
    Ok(blocks)
}

fn compile_groups(groups: &[HopGroup], theta: f64, n: usize) -> Result<Vec<AnalogBlock>> {
    let mut blocks = Vec::new();
    for g in groups {
        for target in [Pauli::X, Pauli::Y] {
            blocks.extend(compile_group(g, target, theta, n)?);
        }
    }
    Ok(blocks)
}

/// Row hopping for one Trotter step at core angle `θ = 𝒜t/(2n)`.
pub fn compile_horizontal(spec: &LatticeSpec, theta: f64) -> Result<Vec<AnalogBlock>> {
    compile_groups(&horizontal_families(spec), theta, spec.n_qubits())
}

/// Column hopping for one Trotter step at core angle `θ = 𝒜t/(2n)`.
pub fn compile_vertical(spec: &LatticeSpec, theta: f64) -> Result<Vec<AnalogBlock>> {
    compile_groups(&vertical_groups(spec), theta, spec.n_qubits())
}

/// On-site term for one Trotter step at `θ_B = ℬt/(4n)`.
///
/// `exp(−iθ_B Z Z)` is an XX block between quarter-turn Y rotations of
/// every qubit, followed by `exp(−iθ_B Z)` on every qubit. The identity
/// part only contributes a global phase and is dropped.
pub fn compile_coulomb(spec: &LatticeSpec, theta_b: f64) -> Result<Vec<AnalogBlock>> {
    if spec.onsite() == 0.0 {
        return Ok(Vec::new());
    }
    let n = spec.n_qubits();
    let sites = spec.cols() * spec.rows();
    let local = |axis, angle, dagger| AnalogBlock {
        kind: BlockKind::LocalRotation,
        terms: (1..=n).map(|site| BlockTerm::Single { site, axis }).collect(),
        angle,
        dagger,
    };
    let quarter = BlockAngle::Pi(PiPhase::new(1, 4));
    Ok(vec![
        local(Pauli::Y, quarter, true),
        AnalogBlock {
            kind: BlockKind::CoulombA,
            terms: (1..=sites)
                .map(|j| BlockTerm::Pair { link: 2 * j - 1, first: Pauli::X, second: Pauli::X })
                .collect(),
            angle: BlockAngle::Radians(theta_b),
            dagger: false,
        },
        local(Pauli::Y, quarter, false),
        local(Pauli::Z, BlockAngle::Radians(theta_b), false),
    ])
}

/// A Trotterized evolution: the same block sequence repeated `steps` times.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    lattice: LatticeSpec,
    steps: usize,
    time: f64,
    blocks: Vec<AnalogBlock>,
}

impl Schedule {
    pub fn lattice(&self) -> &LatticeSpec {
        &self.lattice
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Simulated time `t` in ns.
    pub fn time(&self) -> f64 {
        self.time
    }

    /// Dimensionless `𝒜t`.
    pub fn hopping_time(&self) -> f64 {
        self.lattice.hopping() * self.time
    }

    pub fn step_blocks(&self) -> &[AnalogBlock] {
        &self.blocks
    }

    /// Analog blocks actually emitted per step.
    pub fn emitted_counts(&self) -> BlockCounts {
        let mut c = BlockCounts { total: 0, type_a: 0, type_b: 0 };
        for b in &self.blocks {
            match b.kind {
                BlockKind::TypeA | BlockKind::CoulombA => c.type_a += 1,
                BlockKind::TypeB => c.type_b += 1,
                BlockKind::LocalRotation => continue,
            }
            c.total += 1;
        }
        c
    }

    /// Counts predicted by the closed-form formulas for this lattice width.
    pub fn formula_counts(&self) -> Result<BlockCounts> {
        block_count(self.lattice.cols())
    }
}

/// First-order Trotter schedule of `exp(−iHt)` with `n` steps.
pub fn compile_schedule(spec: &LatticeSpec, t: f64, n: usize) -> Result<Schedule> {
    if n == 0 {
        return Err(Error::validation("a schedule needs at least one Trotter step"));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::validation(format!("simulated time must be finite and non-negative, got {t}")));
    }
    spec.check_schedulable()?;
    let theta = spec.hopping() * t / (2.0 * n as f64);
    let mut blocks = compile_horizontal(spec, theta)?;
    blocks.extend(compile_vertical(spec, theta)?);
    if spec.include_coulomb() {
        blocks.extend(compile_coulomb(spec, spec.onsite() * t / (4.0 * n as f64))?);
    }
    Ok(Schedule { lattice: *spec, steps: n, time: t, blocks })
}

/// Applies every block of every step to `psi0`.
pub fn simulate_schedule(s: &Schedule, psi0: &StateVector) -> Result<StateVector> {
    let n = s.lattice.n_qubits();
    guard_qubits(n)?;
    if psi0.n_qubits() != n {
        return Err(Error::validation("initial state does not match the lattice"));
    }
    let mut rotations = Vec::new();
    for b in &s.blocks {
        rotations.extend(b.rotations(n)?);
    }
    let mut psi = psi0.clone();
    for _ in 0..s.steps {
        for (p, theta) in &rotations {
            psi.apply_pauli_rotation(p, *theta)?;
        }
    }
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(cols: usize, rows: usize) -> LatticeSpec {
        LatticeSpec::hopping_only(cols, rows, 1.0).unwrap()
    }

    #[test]
    fn two_column_rows_use_two_families() {
        let f = horizontal_families(&lattice(2, 3));
        assert_eq!(f.len(), 2);
        let starts: Vec<usize> = f[0].hops.iter().map(|h| h.from).collect();
        assert_eq!(starts, vec![1, 5, 9]);
        assert_eq!(compile_horizontal(&lattice(2, 3), 0.1).unwrap().len(), 12);
    }

    #[test]
    fn three_column_rows_use_four_families() {
        assert_eq!(horizontal_families(&lattice(3, 3)).len(), 4);
        assert_eq!(compile_horizontal(&lattice(3, 3), 0.1).unwrap().len(), 24);
    }

    #[test]
    fn row_cores_match_hand_enumeration() {
        let blocks = compile_horizontal(&lattice(2, 3), 0.1).unwrap();
        let core = &blocks[1];
        assert_eq!(core.kind, BlockKind::TypeA);
        let links: Vec<_> = core
            .terms
            .iter()
            .map(|t| match t {
                BlockTerm::Pair { link, first, second } => (*link, *first, *second),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(links, vec![(1, Pauli::X, Pauli::Y), (5, Pauli::X, Pauli::Y), (9, Pauli::X, Pauli::Y)]);
        // X target: quarter turn on the right link first, inverse afterwards
        assert!(!blocks[0].dagger && blocks[2].dagger);
    }

    #[test]
    fn column_groups_of_two_by_three() {
        let g = vertical_groups(&lattice(2, 3));
        let starts: Vec<Vec<usize>> = g.iter().map(|g| g.hops.iter().map(|h| h.from).collect()).collect();
        assert_eq!(starts, vec![vec![1, 6], vec![2, 7], vec![3, 8], vec![4], vec![5]]);
        assert_eq!(compile_vertical(&lattice(2, 3), 0.1).unwrap().len(), 50);
    }

    #[test]
    fn first_column_core_is_y2x3_plus_y7x8() {
        let blocks = compile_vertical(&lattice(2, 3), 0.1).unwrap();
        let core = &blocks[2];
        assert_eq!(core.kind, BlockKind::TypeA);
        assert_eq!(core.terms, vec![
            BlockTerm::Pair { link: 2, first: Pauli::Y, second: Pauli::X },
            BlockTerm::Pair { link: 7, first: Pauli::Y, second: Pauli::X },
        ]);
    }

    #[test]
    fn schedule_counts_match_formulas() {
        for cols in 2..=4 {
            for rows in [cols, cols + 1] {
                if (cols, rows) == (2, 2) {
                    continue;
                }
                let s = compile_schedule(&lattice(cols, rows), 1.0, 3).unwrap();
                assert_eq!(s.emitted_counts(), s.formula_counts().unwrap(), "{cols}x{rows}");
                assert_eq!(s.step_blocks().len(), s.formula_counts().unwrap().total);
            }
        }
    }

    #[test]
    fn two_rows_leave_one_column_group_empty() {
        // 2ℓ(h − 1) = 4 column hops fill only four of the five residue classes
        let s = compile_schedule(&lattice(2, 2), 1.0, 1).unwrap();
        assert_eq!(vertical_groups(s.lattice()).len(), 4);
        assert_eq!(s.emitted_counts(), BlockCounts { total: 52, type_a: 12, type_b: 40 });
        assert_eq!(s.formula_counts().unwrap().total, 62);
    }

    #[test]
    fn zero_steps_rejected() {
        assert!(compile_schedule(&lattice(2, 2), 1.0, 0).is_err());
    }

    #[test]
    fn zero_onsite_compiles_to_nothing() {
        let l = LatticeSpec::new(2, 2, 1.0, 0.0, true).unwrap();
        assert!(compile_coulomb(&l, 0.3).unwrap().is_empty());
    }

    #[test]
    fn single_site_onsite_pairs_qubits_one_and_two() {
        let l = LatticeSpec::new(1, 1, 1.0, 2.0, true).unwrap();
        let blocks = compile_coulomb(&l, 0.3).unwrap();
        let core: Vec<_> = blocks.iter().filter(|b| b.kind == BlockKind::CoulombA).collect();
        assert_eq!(core.len(), 1);
        assert_eq!(core[0].terms, vec![BlockTerm::Pair { link: 1, first: Pauli::X, second: Pauli::X }]);
    }

    #[test]
    fn zero_time_schedule_is_identity() {
        let s = compile_schedule(&lattice(2, 2), 0.0, 2).unwrap();
        let psi = StateVector::with_ones(8, &[0, 3, 5]).unwrap();
        let out = simulate_schedule(&s, &psi).unwrap();
        assert!((crate::state::fidelity(&psi, &out).unwrap() - 1.0).abs() < 1e-12);
    }
}
