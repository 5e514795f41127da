//! Initial states for lattice experiments.
//!
//! Grammar, case-insensitive:
//! - `up@row,col` / `down@row,col` entries (1-based row and column), separated
//!   by `;`, `+` or whitespace. Listed sites are occupied, the rest empty.
//! - `ghz-pair`: equal superposition of the fully occupied lattice and the vacuum.
//! - `random(seed)`: one Haar-random state.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use daqc_core::hubbard::{spinless_index, LatticeSpec, Spin};
use daqc_core::state::StateVector;
use daqc_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::{HarnessError, Result};

/// One occupied spin orbital, 1-based `row` and `col`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Occupation {
    pub spin: Spin,
    pub row: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitialStateSpec {
    Occupied(Vec<Occupation>),
    GhzPair,
    Random(u64),
}

fn bad(input: &str, message: impl Into<String>) -> HarnessError {
    HarnessError::InitialState { input: input.to_string(), message: message.into() }
}

fn parse_occupation(input: &str, token: &str) -> Result<Occupation> {
    let (spin, site) = token.split_once('@').ok_or_else(|| bad(input, format!("`{token}` lacks `@`")))?;
    let spin = match spin {
        "up" => Spin::Up,
        "down" => Spin::Down,
        other => return Err(bad(input, format!("unknown spin `{other}`"))),
    };
    let (row, col) = site.split_once(',').ok_or_else(|| bad(input, format!("`{site}` is not `row,col`")))?;
    let index = |s: &str| {
        s.parse::<usize>().ok().filter(|&v| v > 0).ok_or_else(|| bad(input, format!("`{s}` is not a 1-based index")))
    };
    Ok(Occupation { spin, row: index(row)?, col: index(col)? })
}

impl FromStr for InitialStateSpec {
    type Err = HarnessError;

    fn from_str(input: &str) -> Result<Self> {
        let s = input.trim().to_ascii_lowercase();
        if s == "ghz-pair" {
            return Ok(Self::GhzPair);
        }
        if let Some(rest) = s.strip_prefix("random(") {
            let seed = rest
                .strip_suffix(')')
                .and_then(|v| v.trim().parse::<u64>().ok())
                .ok_or_else(|| bad(input, "expected `random(<u64 seed>)`"))?;
            return Ok(Self::Random(seed));
        }
        let sites = s
            .split(|c: char| c == ';' || c == '+' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| parse_occupation(input, t))
            .collect::<Result<Vec<_>>>()?;
        if sites.is_empty() {
            return Err(bad(input, "no occupations listed"));
        }
        Ok(Self::Occupied(sites))
    }
}

impl fmt::Display for InitialStateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::GhzPair => write!(f, "ghz-pair"),
            Self::Random(seed) => write!(f, "random({seed})"),
            Self::Occupied(sites) => {
                let parts: Vec<String> = sites
                    .iter()
                    .map(|o| {
                        let spin = if o.spin == Spin::Up { "up" } else { "down" };
                        format!("{spin}@{},{}", o.row, o.col)
                    })
                    .collect();
                write!(f, "{}", parts.join(";"))
            }
        }
    }
}

impl InitialStateSpec {
    /// The state on `spec`'s spin-orbital register. Occupied modes are `|0⟩`.
    pub fn build(&self, spec: &LatticeSpec) -> Result<StateVector> {
        let n = spec.n_qubits();
        match self {
            Self::Random(seed) => random_state(n, &mut ChaCha20Rng::seed_from_u64(*seed)),
            Self::GhzPair => {
                let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
                amps[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
                amps[(1 << n) - 1] = Complex64::new(FRAC_1_SQRT_2, 0.0);
                Ok(StateVector::normalized(n, amps)?)
            }
            Self::Occupied(sites) => {
                let mut filled = Vec::with_capacity(sites.len());
                for o in sites {
                    if o.row > spec.rows() || o.col > spec.cols() {
                        return Err(bad(
                            &self.to_string(),
                            format!("site ({},{}) outside {} rows x {} columns", o.row, o.col, spec.rows(), spec.cols()),
                        ));
                    }
                    let q = spinless_index(spec, o.row - 1, o.col, o.spin)? - 1;
                    if filled.contains(&q) {
                        return Err(bad(&self.to_string(), format!("site ({},{}) listed twice", o.row, o.col)));
                    }
                    filled.push(q);
                }
                let empty: Vec<usize> = (0..n).filter(|q| !filled.contains(q)).collect();
                Ok(StateVector::with_ones(n, &empty)?)
            }
        }
    }
}

/// Haar-random state: independent complex standard normals, normalized.
/// Real and imaginary parts are drawn alternately in basis order.
pub fn random_state<R: Rng>(n_qubits: usize, rng: &mut R) -> Result<StateVector> {
    let dim = 1usize
        .checked_shl(n_qubits as u32)
        .filter(|_| n_qubits <= daqc_core::MAX_DENSE_QUBITS)
        .ok_or_else(|| daqc_core::Error::Resource(format!("{n_qubits} qubits exceeds the dense limit")))?;
    let amps = (0..dim)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        })
        .collect();
    Ok(StateVector::normalized(n_qubits, amps)?)
}
