use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Analog blocks per Trotter step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockCounts {
    pub total: usize,
    pub type_a: usize,
    pub type_b: usize,
}

/// Closed-form block counts for a lattice of width `cols`.
///
/// Width 2 leaves two of the four row families empty, which removes eight
/// blocks relative to the general `2(2ℓ+1)² + 24`.
pub fn block_count(cols: usize) -> Result<BlockCounts> {
    if cols < 2 {
        return Err(Error::validation(format!("block counts need at least two columns, got {cols}")));
    }
    let l = cols;
    let (type_a, type_b) = if l == 2 { (14, 48) } else { (4 * l + 10, 8 * l * l + 4 * l + 16) };
    let total = if l == 2 { 62 } else { 2 * (2 * l + 1).pow(2) + 24 };
    debug_assert_eq!(total, type_a + type_b);
    Ok(BlockCounts { total, type_a, type_b })
}

/// Durations of one simulation at drive strength `A·g1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingReport {
    /// Hopping core duration, ns.
    pub tau_a: f64,
    /// Quarter-turn dressing duration, ns.
    pub tau_b: f64,
    /// Total, μs.
    pub tau_sim_us: f64,
}

/// `τ_a = 𝒜t/(A·g1·n)`, `τ_b = π/(2A·g1)`, total weighted by the block counts.
pub fn timing(cols: usize, hopping_time: f64, steps: usize, drive_strength: f64) -> Result<TimingReport> {
    if !(drive_strength > 0.0) {
        return Err(Error::validation("drive strength A·g1 must be positive"));
    }
    if steps == 0 {
        return Err(Error::validation("at least one Trotter step is required"));
    }
    let counts = block_count(cols)?;
    let tau_a = hopping_time / (drive_strength * steps as f64);
    let tau_b = PI / (2.0 * drive_strength);
    let tau_sim_ns = counts.type_a as f64 * tau_a + counts.type_b as f64 * tau_b;
    Ok(TimingReport { tau_a, tau_b, tau_sim_us: tau_sim_ns / 1000.0 })
}
