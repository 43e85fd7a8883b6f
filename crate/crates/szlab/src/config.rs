//! Run-wide settings shared by the command-line tools.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::envelope::EnvelopeOptions;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Target accuracy of quadrature-based functionals.
    pub quadrature: f64,
    /// Membership slack `τ`: a point counts as inside only with this margin.
    pub membership: f64,
    /// Shrinkage `δ_Y`, relative to the smallest primitive radius.
    pub shrink: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            quadrature: 5e-6,
            membership: 1e-12,
            shrink: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Boundary sampling resolution `N`.
    pub grid: usize,
    pub seed: u64,
    /// Optimizer restarts.
    pub budget: usize,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            grid: 1 << 14,
            seed: 0,
            budget: 20,
            tolerances: Tolerances::default(),
            out: None,
        }
    }
}

impl RunConfig {
    pub const MIN_GRID: usize = 1 << 10;

    pub fn validate(&self) -> Result<()> {
        if !(self.grid.is_power_of_two() && self.grid >= Self::MIN_GRID) {
            return Err(Error::Config(format!(
                "grid {} must be a power of two ≥ {}",
                self.grid,
                Self::MIN_GRID
            )));
        }
        if self.budget == 0 {
            return Err(Error::Config("budget must be at least 1".into()));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("quadrature", t.quadrature),
            ("membership", t.membership),
            ("shrink", t.shrink),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("tolerance {name} = {v} must be positive")));
            }
        }
        Ok(())
    }

    pub fn envelope_options(&self) -> EnvelopeOptions {
        EnvelopeOptions {
            grid: self.grid,
            shrink: self.tolerances.shrink,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_must_be_a_large_power_of_two() {
        let mut c = RunConfig::default();
        assert!(c.validate().is_ok());
        c.grid = 1000;
        assert!(c.validate().is_err());
        c.grid = 512;
        assert!(c.validate().is_err());
    }

    #[test]
    fn tolerances_are_positive() {
        let mut c = RunConfig::default();
        c.tolerances.membership = 0.0;
        assert!(c.validate().is_err());
    }
}
