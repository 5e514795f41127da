//! `key = value` experiment configuration files.
//!
//! Blank lines and everything after `#` are ignored. Keys may use `-` or `_`.
//! Later keys override earlier ones; command-line flags override the file.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use daqc_core::hubbard::LatticeSpec;

use crate::error::{HarnessError, Result};
use crate::initial::InitialStateSpec;

/// Everything a fermion-lattice experiment needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Option<String>,
    pub cols: usize,
    pub rows: usize,
    pub steps: Vec<usize>,
    /// Dimensionless simulated time `𝒜t`.
    pub hopping_time: f64,
    /// Hopping amplitude `𝒜`.
    pub hopping: f64,
    pub onsite: f64,
    pub coulomb: bool,
    /// Drive strength `A·g1/2π` in GHz.
    pub drive_ghz: f64,
    pub seed: u64,
    /// Number of random initial states.
    pub samples: usize,
    /// Points of the `𝒜t` grid for fidelity curves, endpoints included.
    pub time_samples: usize,
    pub initial: Option<InitialStateSpec>,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            experiment: None,
            cols: 2,
            rows: 3,
            steps: vec![10, 20, 30],
            hopping_time: 4.0,
            hopping: 1.0,
            onsite: 0.0,
            coulomb: false,
            drive_ghz: 0.08,
            seed: 0,
            samples: 1000,
            time_samples: 81,
            initial: None,
            out: None,
        }
    }
}

/// Splits a config text into `(line number, key, value)` triples.
pub fn parse_key_values(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| HarnessError::Config {
            line: i + 1,
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim().replace('-', "_").to_ascii_lowercase();
        if key.is_empty() {
            return Err(HarnessError::Config { line: i + 1, message: "empty key".into() });
        }
        out.push((i + 1, key, value.trim().to_string()));
    }
    Ok(out)
}

/// Comma-separated positive integers, e.g. `10,20,30`.
pub fn parse_steps(s: &str) -> std::result::Result<Vec<usize>, String> {
    let steps = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("`{}`: {e}", t.trim())))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if steps.contains(&0) {
        return Err("Trotter step counts must be positive".into());
    }
    Ok(steps)
}

fn value<T: FromStr>(line: usize, key: &str, v: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    v.parse::<T>().map_err(|e| HarnessError::Config { line, message: format!("{key}: {e}") })
}

fn flag(line: usize, key: &str, v: &str) -> Result<bool> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(HarnessError::Config { line, message: format!("{key}: expected a boolean, got `{v}`") }),
    }
}

impl ExperimentConfig {
    /// Defaults overridden by the keys in `text`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (line, key, v) in parse_key_values(text)? {
            cfg.set(line, &key, &v)?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| HarnessError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    fn set(&mut self, line: usize, key: &str, v: &str) -> Result<()> {
        match key {
            "experiment" => self.experiment = Some(v.to_string()),
            "cols" => self.cols = value(line, key, v)?,
            "rows" => self.rows = value(line, key, v)?,
            "steps" => {
                self.steps = parse_steps(v).map_err(|message| HarnessError::Config { line, message })?;
            }
            "at" | "hopping_time" => self.hopping_time = value(line, key, v)?,
            "hopping" => self.hopping = value(line, key, v)?,
            "onsite" => self.onsite = value(line, key, v)?,
            "coulomb" => self.coulomb = flag(line, key, v)?,
            "drive_ghz" => self.drive_ghz = value(line, key, v)?,
            "seed" => self.seed = value(line, key, v)?,
            "samples" | "random" => self.samples = value(line, key, v)?,
            "time_samples" => self.time_samples = value(line, key, v)?,
            "initial" => self.initial = Some(value(line, key, v)?),
            "out" => self.out = Some(PathBuf::from(v)),
            _ => return Err(HarnessError::Config { line, message: format!("unknown key `{key}`") }),
        }
        Ok(())
    }

    /// Checks value ranges that the file grammar cannot express.
    pub fn validate(&self) -> Result<()> {
        if self.steps.is_empty() || self.steps.contains(&0) {
            return Err(HarnessError::argument("need at least one positive Trotter step count"));
        }
        if !(self.hopping_time >= 0.0) || !self.hopping_time.is_finite() {
            return Err(HarnessError::argument(format!("𝒜t must be finite and non-negative, got {}", self.hopping_time)));
        }
        if !(self.hopping > 0.0) || !self.hopping.is_finite() {
            return Err(HarnessError::argument(format!("𝒜 must be positive, got {}", self.hopping)));
        }
        if !(self.drive_ghz > 0.0) || !self.drive_ghz.is_finite() {
            return Err(HarnessError::argument(format!("A·g1/2π must be positive, got {}", self.drive_ghz)));
        }
        if self.samples == 0 {
            return Err(HarnessError::argument("sample count must be at least 1"));
        }
        if self.time_samples == 0 {
            return Err(HarnessError::argument("time grid needs at least one point"));
        }
        Ok(())
    }

    pub fn lattice(&self) -> Result<LatticeSpec> {
        Ok(LatticeSpec::new(self.cols, self.rows, self.hopping, self.onsite, self.coulomb)?)
    }

    /// Simulated time `t = 𝒜t/𝒜`.
    pub fn time(&self) -> f64 {
        self.hopping_time / self.hopping
    }
}
