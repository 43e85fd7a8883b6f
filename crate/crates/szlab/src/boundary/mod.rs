//! One-variable machinery on the unit circle.
//!
//! Everything here is a pure function of immutable inputs. Angles are in
//! radians and grids sample the circle at `exp(2πik/N)`.

mod arc;
mod blaschke;
pub(crate) mod fft;
mod grid;
mod measure;
mod outer;
mod singular;

pub use arc::{harmonic_measure_arc, Arc};
pub use blaschke::{blaschke_eval, BlaschkeData};
pub(crate) use grid::horner_eval;
pub use grid::{conjugate_grid, poisson_value, BoundaryGrid, GridSample};
pub use measure::{measure_join, measure_meet, AtomicMeasure, ANGLE_EPS};
pub use outer::{outer_from_log_modulus, GridOuter, OuterSpec};
pub(crate) use singular::singular_at as singular_at_pub;
pub use singular::{singular_boundary, singular_eval};

use num_complex::Complex64;

pub const TAU: f64 = std::f64::consts::TAU;

/// Reduce an angle to `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Shortest angular distance between two angles.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = normalize_angle(a - b);
    d.min(TAU - d)
}

pub(crate) fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

pub(crate) fn check_open_disc(z: Complex64) -> crate::Result<()> {
    if !(z.norm() <= 1.0 - 1e-12) {
        return Err(crate::Error::OutsideDisc(z));
    }
    Ok(())
}
