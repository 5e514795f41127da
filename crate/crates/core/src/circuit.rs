//! From circuit constants to spin-model parameters, plus Cooper-pair-box spectra.
//!
//! Capacitances are in fF, Josephson energies in rad/ns. Gate-charge numbers are
//! reported in units where the Cooper-pair charge 2e is 1 with V_g in the
//! caller's units, so only ratios between them carry meaning.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::evolve::Tone;

/// `|cos φ|` below this makes the SQUID inductance singular.
pub const COS_FLOOR: f64 = 1e-6;

/// Charge truncation used when none is requested.
pub const DEFAULT_TRUNCATION: usize = 10;

const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
const HBAR: f64 = 1.054_571_817e-34;

/// Circuit constants of two charge qubits joined through one SQUID.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitCircuitParams {
    pub c_g1: f64,
    pub c_g2: f64,
    pub c_j1: f64,
    pub c_j2: f64,
    pub c_c: f64,
    pub c_s: f64,
    pub e_j1: f64,
    pub e_j2: f64,
    pub e_js: f64,
    pub v_g1: f64,
    pub v_g2: f64,
}

impl TwoQubitCircuitParams {
    pub fn validate(&self) -> Result<()> {
        let caps = [
            ("C_g1", self.c_g1),
            ("C_g2", self.c_g2),
            ("C_J1", self.c_j1),
            ("C_J2", self.c_j2),
            ("C_c", self.c_c),
            ("C_s", self.c_s),
        ];
        let energies = [("E_J1", self.e_j1), ("E_J2", self.e_j2), ("E_Js", self.e_js)];
        for (name, v) in caps.iter().chain(&energies) {
            if !(*v > 0.0) || !v.is_finite() {
                return Err(Error::validation(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if !self.v_g1.is_finite() || !self.v_g2.is_finite() {
            return Err(Error::validation("gate voltages must be finite"));
        }
        Ok(())
    }

    /// Total island capacitance `C_g1 + C_J1`.
    pub fn c1(&self) -> f64 {
        self.c_g1 + self.c_j1
    }

    pub fn c2(&self) -> f64 {
        self.c_g2 + self.c_j2
    }

    /// Same circuit with the two qubits relabeled.
    pub fn swapped(&self) -> Self {
        Self {
            c_g1: self.c_g2,
            c_g2: self.c_g1,
            c_j1: self.c_j2,
            c_j2: self.c_j1,
            e_j1: self.e_j2,
            e_j2: self.e_j1,
            v_g1: self.v_g2,
            v_g2: self.v_g1,
            ..*self
        }
    }
}

/// Three-qubit chain with two SQUIDs; qubit 3 is a copy of qubit 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeQubitCircuitParams(pub TwoQubitCircuitParams);

/// External flux through a SQUID loop: DC offset plus up to two AC tones.
#[derive(Debug, Clone, PartialEq)]
pub struct FluxBias {
    pub dc: f64,
    pub tones: Vec<Tone>,
}

impl FluxBias {
    pub fn dc(phi: f64) -> Self {
        Self { dc: phi, tones: Vec::new() }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.dc.is_finite() {
            return Err(Error::validation("flux DC offset must be finite"));
        }
        if self.tones.len() > 2 {
            return Err(Error::validation("a flux bias carries at most two AC tones"));
        }
        Ok(())
    }

    /// Small-signal premise: every tone amplitude at most a tenth of the DC offset.
    pub fn warnings(&self) -> Vec<String> {
        self.tones
            .iter()
            .enumerate()
            .filter(|(_, t)| t.amplitude.abs() > 0.1 * self.dc.abs())
            .map(|(k, t)| {
                format!(
                    "tone {} amplitude {} exceeds 0.1·|φ_DC| = {}",
                    k + 1,
                    t.amplitude,
                    0.1 * self.dc.abs()
                )
            })
            .collect()
    }
}

/// Two-level parameters of a qubit pair, all in rad/ns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveSpinParams {
    pub omega1: f64,
    pub omega2: f64,
    pub g0: f64,
    pub g1: f64,
}

/// Static and flux-modulated coupling strengths of one SQUID link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkCoupling {
    pub g0: f64,
    pub g1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeQubitEffectiveParams {
    pub omega1: f64,
    pub omega2: f64,
    pub links: [LinkCoupling; 2],
}

/// `2·E_Js·cos φ_ext`.
pub fn squid_effective_ej(e_js: f64, phi_ext: f64) -> Result<f64> {
    let c = phi_ext.cos();
    if c.abs() <= COS_FLOOR {
        return Err(Error::Divergence(format!(
            "φ_ext = {phi_ext} rad is within 1e-6 of a SQUID inductance pole"
        )));
    }
    Ok(2.0 * e_js * c)
}

fn link_coupling(p: &TwoQubitCircuitParams, second_island: f64, bias: &FluxBias) -> Result<LinkCoupling> {
    bias.validate()?;
    let e_js_bar = squid_effective_ej(p.e_js, bias.dc)?;
    let g0 = p.c_c * p.c_c * p.e_j1 * p.e_j2 / (4.0 * (p.c1() + p.c_c) * second_island * e_js_bar);
    Ok(LinkCoupling { g0, g1: g0 * bias.dc.tan() })
}

pub fn two_qubit_effective_params(p: &TwoQubitCircuitParams, bias: &FluxBias) -> Result<EffectiveSpinParams> {
    p.validate()?;
    let link = link_coupling(p, p.c2() + p.c_c, bias)?;
    Ok(EffectiveSpinParams { omega1: p.e_j1, omega2: p.e_j2, g0: link.g0, g1: link.g1 })
}

/// The middle island of a three-qubit chain sees two coupling capacitors.
pub fn three_qubit_effective_params(
    p: &ThreeQubitCircuitParams,
    biases: &[FluxBias; 2],
) -> Result<ThreeQubitEffectiveParams> {
    let base = &p.0;
    base.validate()?;
    let middle = base.c2() + 2.0 * base.c_c;
    Ok(ThreeQubitEffectiveParams {
        omega1: base.e_j1,
        omega2: base.e_j2,
        links: [link_coupling(base, middle, &biases[0])?, link_coupling(base, middle, &biases[1])?],
    })
}

/// Renormalized capacitances, gate charges and charge-charge couplings of the
/// two-qubit circuit before the SQUID degrees of freedom are eliminated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeCouplings {
    pub c_j1: f64,
    pub c_j2: f64,
    pub c_js: f64,
    pub n_g1: f64,
    pub n_g2: f64,
    pub n_gs: f64,
    pub g12: f64,
    pub g1s: f64,
    pub g2s: f64,
}

/// `C_c(C₁+C₂)(C_s+C_c) + C_c²C_s + C₁C₂(2C_c+C_s)`.
pub fn cubic_capacitance(p: &TwoQubitCircuitParams) -> f64 {
    let (c1, c2, cc, cs) = (p.c1(), p.c2(), p.c_c, p.c_s);
    cc * (c1 + c2) * (cs + cc) + cc * cc * cs + c1 * c2 * (2.0 * cc + cs)
}

pub fn full_charge_couplings(p: &TwoQubitCircuitParams) -> Result<ChargeCouplings> {
    p.validate()?;
    let (c1, c2, cc, cs) = (p.c1(), p.c2(), p.c_c, p.c_s);
    let star = cubic_capacitance(p);
    let c_j1 = star / (c2 * (2.0 * cc + cs) + cc * (cc + cs));
    let c_j2 = star / (c1 * (2.0 * cc + cs) + cc * (cc + cs));
    let c_js = star / ((cc + c1) * (cc + c2));
    let q1 = p.c_g1 * p.v_g1;
    let q2 = p.c_g2 * p.v_g2;
    Ok(ChargeCouplings {
        c_j1,
        c_j2,
        c_js,
        n_g1: -q1 - c_j1 * cc * cc * q2 / star,
        n_g2: -q2 - c_j2 * cc * cc * q1 / star,
        n_gs: -c_js * cc / star * (q1 * (c2 + cc) + q2 * (c1 + cc)),
        g12: cc * cc / star,
        g1s: cc * (c2 + cc) / star,
        g2s: cc * (c1 + cc) / star,
    })
}

/// Charging energy `e²/2C` in rad/ns for a capacitance in fF.
pub fn charging_energy(c_ff: f64) -> f64 {
    ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / (2.0 * c_ff * 1e-15 * HBAR) * 1e-9
}

/// Inputs of a charge-basis Cooper-pair-box diagonalization.
#[derive(Debug, Clone, PartialEq)]
pub struct CpbSpectrumRequest {
    pub e_j: f64,
    pub e_c: f64,
    /// Weight of the `sin²φ` correction.
    pub gamma: f64,
    pub n_g: Vec<f64>,
    /// Charge states `−N..=N` are kept.
    pub truncation: usize,
    /// Number of lowest eigenvalues returned per grid point.
    pub levels: usize,
}

impl CpbSpectrumRequest {
    pub fn new(e_j: f64, e_c: f64, gamma: f64, n_g: Vec<f64>) -> Self {
        Self { e_j, e_c, gamma, n_g, truncation: DEFAULT_TRUNCATION, levels: 4 }
    }
}

/// `4E_C(n−n_g)² − E_J cosφ + γ sin²φ` in the charge basis `|−N⟩..|N⟩`.
pub fn cpb_hamiltonian(e_j: f64, e_c: f64, gamma: f64, n_g: f64, truncation: usize) -> DMatrix<f64> {
    let dim = 2 * truncation + 1;
    let charge = |i: usize| i as f64 - truncation as f64;
    // D = Σ |n⟩⟨n+1| − h.c., so sinφ = −(i/2)D and sin²φ = −D²/4
    let d = DMatrix::from_fn(dim, dim, |r, c| {
        if c == r + 1 {
            1.0
        } else if r == c + 1 {
            -1.0
        } else {
            0.0
        }
    });
    let sin_sq = -(&d * &d) / 4.0;
    DMatrix::from_fn(dim, dim, |r, c| {
        let kinetic = if r == c { 4.0 * e_c * (charge(r) - n_g).powi(2) } else { 0.0 };
        let tunnel = if r.abs_diff(c) == 1 { -e_j / 2.0 } else { 0.0 };
        kinetic + tunnel + gamma * sin_sq[(r, c)]
    })
}

fn lowest_levels(e_j: f64, e_c: f64, gamma: f64, n_g: f64, truncation: usize, levels: usize) -> Vec<f64> {
    let mut values: Vec<f64> = cpb_hamiltonian(e_j, e_c, gamma, n_g, truncation)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    values.truncate(levels);
    values
}

/// Lowest `levels` eigenvalues at each gate charge, ascending.
///
/// Every grid point is re-solved with four more charge states; a shift above
/// `1e-8·max(E_C, E_J, |γ|)` is reported as a truncation error.
pub fn cpb_spectrum(req: &CpbSpectrumRequest) -> Result<Vec<Vec<f64>>> {
    if req.truncation < 5 {
        return Err(Error::validation(format!("truncation {} is below the minimum of 5", req.truncation)));
    }
    if req.levels == 0 || req.levels > 2 * req.truncation {
        return Err(Error::validation(format!(
            "{} levels requested from a {}-state truncation",
            req.levels,
            2 * req.truncation + 1
        )));
    }
    if !(req.e_c > 0.0) || !(req.e_j >= 0.0) || !req.gamma.is_finite() {
        return Err(Error::validation("need E_C > 0, E_J ≥ 0 and finite γ"));
    }
    let scale = req.e_c.max(req.e_j).max(req.gamma.abs());
    req.n_g
        .iter()
        .map(|&ng| {
            let coarse = lowest_levels(req.e_j, req.e_c, req.gamma, ng, req.truncation, req.levels);
            let fine = lowest_levels(req.e_j, req.e_c, req.gamma, ng, req.truncation + 4, req.levels);
            let shift = coarse.iter().zip(&fine).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            if shift > 1e-8 * scale {
                return Err(Error::Truncation(format!(
                    "levels at n_g = {ng} moved by {shift} when widening the charge basis"
                )));
            }
            Ok(coarse)
        })
        .collect()
}

/// The qubit subspace of one box: the two lowest eigenstates at `n_g = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelProjection {
    /// `E_1 − E_0`
    pub splitting: f64,
    /// `|⟨0|sinφ|1⟩|`, ½ when `sinφ` projects onto `σ^y/2`.
    pub sin_matrix_element: f64,
    /// `⟨0|sinφ|0⟩ − ⟨1|sinφ|1⟩`, zero when no `σ^z` component appears.
    pub sin_diagonal_gap: f64,
}

pub fn two_level_projection(e_j: f64, e_c: f64, gamma: f64, truncation: usize) -> Result<TwoLevelProjection> {
    if truncation < 5 || !(e_c > 0.0) {
        return Err(Error::validation("need truncation ≥ 5 and E_C > 0"));
    }
    let h = cpb_hamiltonian(e_j, e_c, gamma, 0.5, truncation);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let v0 = eig.eigenvectors.column(order[0]);
    let v1 = eig.eigenvectors.column(order[1]);
    // sinφ = −(i/2)D with D real antisymmetric: matrix elements are i·(real)
    let dim = 2 * truncation + 1;
    let d = DMatrix::from_fn(dim, dim, |r, c| {
        if c == r + 1 {
            1.0
        } else if r == c + 1 {
            -1.0
        } else {
            0.0
        }
    });
    let off = 0.5 * v0.dot(&(&d * v1)).abs();
    Ok(TwoLevelProjection {
        splitting: eig.eigenvalues[order[1]] - eig.eigenvalues[order[0]],
        sin_matrix_element: off,
        // a real antisymmetric D has vanishing diagonal expectation values
        sin_diagonal_gap: 0.5 * (v0.dot(&(&d * v0)) - v1.dot(&(&d * v1))),
    })
}

/// Ratio of SQUID to qubit-1 impedance, `Z = sqrt(L_J/C)` with `L_J ∝ 1/E_J`.
///
/// The SQUID uses `C_s` and its flux-tuned energy; the qubit uses `C₁ + C_c`.
/// Flux-quantum prefactors cancel. Meant for qualitative comparison only.
pub fn impedance_ratio(p: &TwoQubitCircuitParams, phi_ext: f64) -> Result<f64> {
    p.validate()?;
    let e_squid = squid_effective_ej(p.e_js, phi_ext)?.abs();
    let c_qubit = p.c1() + p.c_c;
    Ok(((p.e_j1 / e_squid) * (c_qubit / p.c_s)).sqrt())
}
