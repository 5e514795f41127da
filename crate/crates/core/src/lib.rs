//! Simulation and compilation toolkit for digital-analog quantum computing on a
//! chain of charge qubits coupled through flux-tunable SQUIDs.
//!
//! Units: angular frequencies and energies in rad/ns (ℏ = 1), times in ns.
//! Qubit indices exposed by the hardware-facing modules ([`spin`], [`hubbard`])
//! are 1-based, matching chain positions; the numerics layer uses 0-based
//! qubit offsets with qubit 0 as the most significant bit of a basis index.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuit;
pub mod error;
pub mod evolve;
pub mod hubbard;
pub mod numfmt;
pub mod operator;
pub mod pauli;
pub mod phase;
pub mod spin;
pub mod state;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Largest register handled by dense representations.
pub const MAX_DENSE_QUBITS: usize = 14;
