//! Upper bounds on the extremal function from explicit discs.
//!
//! Three families are searched: ball discs (plus constant discs inside the
//! set), closed polynomial liftings, and glued discs. Every result carries a
//! certificate whose re-evaluation reproduces the reported value, and the
//! value is only reported when the certificate's boundary lands in the set
//! at the configured sampling resolution.

mod ball;
mod glued;
mod grid;
mod rational;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::disc::{check_boundary_in, LiftedDisc, Point, SetGeometry};
use crate::functionals::j_of;
use crate::glue::{gluing_upper_bound, GluingSpec};
use crate::{Error, Result};

pub use ball::{best_ball, envelope_ball};
pub use glued::envelope_glued;
pub use grid::{v_grid, GridPoint};
pub use rational::{envelope_rational, polynomial_lifting};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Ball,
    Rational,
    Glued,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Ball, Family::Rational, Family::Glued];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Ball => "ball",
            Self::Rational => "rational",
            Self::Glued => "glued",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "ball" | "a-ball" => Ok(Self::Ball),
            "rational" => Ok(Self::Rational),
            "glued" => Ok(Self::Glued),
            other => Err(Error::Config(format!("unknown family {other:?}"))),
        }
    }
}

/// The disc behind a reported value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Certificate {
    /// The constant disc at a point of the set.
    Constant {
        point: Point,
    },
    /// A closed lifted disc; its value is `J = I`.
    Disc {
        disc: LiftedDisc,
    },
    Glued {
        spec: GluingSpec,
    },
}

impl Certificate {
    /// Recompute the value and the boundary membership at resolution `size`.
    pub fn evaluate(&self, x: &SetGeometry, size: usize) -> Result<(f64, f64)> {
        match self {
            Self::Constant { point } => Ok((0.0, if x.contains(point) { 1.0 } else { 0.0 })),
            Self::Disc { disc } => {
                let rep = check_boundary_in(disc, x, size);
                Ok((j_of(disc)?.value, rep.fraction_inside))
            }
            Self::Glued { spec } => {
                let b = gluing_upper_bound(spec, x, size)?;
                Ok((b.bound, b.boundary_report.fraction_inside))
            }
        }
    }

    /// The center `f(0)`.
    pub fn center(&self) -> Option<Point> {
        match self {
            Self::Constant { point } => Some(point.clone()),
            Self::Disc { disc } => disc.center(),
            Self::Glued { spec } => Some(spec.base().value_at_zero()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Validity {
    pub grid: usize,
    pub fraction_inside: f64,
    /// Optimizer restarts spent (0 for closed-form families).
    pub budget: usize,
    /// Final `m` of a glued certificate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeResult {
    pub value: f64,
    pub family: Family,
    pub certificate: Certificate,
    pub validity: Validity,
}

impl EnvelopeResult {
    /// Re-evaluate the certificate at the recorded grid and compare.
    pub fn reevaluate(&self, x: &SetGeometry) -> Result<f64> {
        Ok(self.certificate.evaluate(x, self.validity.grid)?.0)
    }
}

/// Settings shared by the envelope searches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeOptions {
    /// Boundary resolution of the final membership check.
    pub grid: usize,
    /// Shrinkage `δ_Y` relative to the smallest primitive radius.
    pub shrink: f64,
}

impl Default for EnvelopeOptions {
    fn default() -> Self {
        Self {
            grid: 1 << 14,
            shrink: 1e-4,
        }
    }
}

impl EnvelopeOptions {
    pub(crate) fn delta(&self, x: &SetGeometry) -> f64 {
        let r = x.smallest_radius();
        self.shrink * if r.is_finite() { r } else { x.diameter().max(1e-300) }
    }

    /// `Y`, the set shrunk by `δ_Y`.
    pub(crate) fn inner(&self, x: &SetGeometry) -> Result<SetGeometry> {
        x.shrink(self.delta(x))
    }
}

pub(crate) fn check_point(x: &SetGeometry, z: &[Complex64]) -> Result<()> {
    if z.len() != x.dimension() {
        return Err(Error::Config(format!(
            "point has dimension {} but the set has dimension {}",
            z.len(),
            x.dimension()
        )));
    }
    if z.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(Error::Config("point has non-finite coordinates".into()));
    }
    Ok(())
}

/// The constant-disc result for `z ∈ X`.
pub(crate) fn constant_result(
    x: &SetGeometry,
    z: &[Complex64],
    family: Family,
    opts: &EnvelopeOptions,
) -> Option<EnvelopeResult> {
    x.contains(z).then(|| EnvelopeResult {
        value: 0.0,
        family,
        certificate: Certificate::Constant { point: z.to_vec() },
        validity: Validity {
            grid: opts.grid,
            fraction_inside: 1.0,
            budget: 0,
            m: None,
        },
    })
}
