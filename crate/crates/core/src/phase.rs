//! Angles stored as exact rational multiples of π.

use std::f64::consts::PI;
use std::fmt;

use num_rational::Ratio;

/// `ratio · π`. Cosine and sine are exact whenever the ratio is a multiple of 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PiPhase(Ratio<i64>);

impl PiPhase {
    pub fn new(numer: i64, denom: i64) -> Self {
        Self(Ratio::new(numer, denom))
    }

    pub fn integer(k: i64) -> Self {
        Self(Ratio::from_integer(k))
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn radians(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64 * PI
    }

    /// Position on the quarter-turn lattice, if the angle lies on it.
    fn quarter_turns(&self) -> Option<i64> {
        let doubled = self.0 * 2;
        doubled.is_integer().then(|| doubled.to_integer().rem_euclid(4))
    }

    pub fn cos(&self) -> f64 {
        match self.quarter_turns() {
            Some(0) => 1.0,
            Some(2) => -1.0,
            Some(_) => 0.0,
            None => self.radians().cos(),
        }
    }

    pub fn sin(&self) -> f64 {
        match self.quarter_turns() {
            Some(1) => 1.0,
            Some(3) => -1.0,
            Some(_) => 0.0,
            None => self.radians().sin(),
        }
    }
}

impl fmt::Display for PiPhase {
    /// Renders the multiple of π, e.g. `3/2` or `2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_turn_values_are_exact() {
        assert_eq!(PiPhase::integer(2).cos(), 1.0);
        assert_eq!(PiPhase::integer(1).sin(), 0.0);
        assert_eq!(PiPhase::new(3, 2).sin(), -1.0);
        assert_eq!(PiPhase::new(3, 2).cos(), 0.0);
        assert_eq!(PiPhase::new(-1, 2).sin(), -1.0);
    }

    #[test]
    fn off_lattice_angles_fall_back_to_floats() {
        assert!((PiPhase::new(1, 3).cos() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn renders_as_reduced_fraction() {
        assert_eq!(PiPhase::new(6, 4).to_string(), "3/2");
        assert_eq!(PiPhase::integer(2).to_string(), "2");
    }
}
