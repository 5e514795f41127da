//! Experiment harness for `daqc-core`: configuration, initial states and the
//! CSV-producing experiments behind the `daqc` command-line tool.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod csv;
pub mod device;
pub mod error;
pub mod initial;
pub mod lattice;

pub use config::ExperimentConfig;
pub use error::{HarnessError, Result};
pub use initial::InitialStateSpec;
