use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{envelope_ball, envelope_glued, envelope_rational, Certificate, EnvelopeOptions, EnvelopeResult, Family};
use crate::disc::{Point, SetGeometry};
use crate::Result;

/// The best value over the enabled families at one point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub z: Point,
    pub value: f64,
    pub family: Family,
    pub certificate: Certificate,
}

/// Degree used for the rational family on grids.
const GRID_DEGREE: usize = 3;

fn best_at(
    x: &SetGeometry,
    z: &[Complex64],
    families: &[Family],
    budget: usize,
    seed: u64,
    opts: &EnvelopeOptions,
) -> Result<GridPoint> {
    let mut best: Option<EnvelopeResult> = None;
    let mut last_err = None;
    for &f in families {
        let r = match f {
            Family::Ball => envelope_ball(x, z, opts),
            Family::Rational => envelope_rational(x, z, GRID_DEGREE, budget, seed, opts),
            Family::Glued => envelope_glued(x, z, budget, seed, opts),
        };
        match r {
            Ok(r) if best.as_ref().is_none_or(|b| r.value < b.value) => best = Some(r),
            Ok(_) => {}
            Err(e) => last_err = Some(e),
        }
    }
    match best {
        Some(r) => Ok(GridPoint {
            z: z.to_vec(),
            value: r.value,
            family: r.family,
            certificate: r.certificate,
        }),
        None => Err(last_err.unwrap_or_else(|| crate::Error::Config("no families enabled".into()))),
    }
}

/// Per-point minimum over `families`, keeping the certificate of the
/// winning family. Points are evaluated in parallel; every point uses the
/// same seed, so the table does not depend on scheduling.
pub fn v_grid(
    x: &SetGeometry,
    points: &[Point],
    families: &[Family],
    budget: usize,
    seed: u64,
    opts: &EnvelopeOptions,
) -> Result<Vec<GridPoint>> {
    points
        .par_iter()
        .map(|z| best_at(x, z, families, budget, seed, opts))
        .collect()
}
