use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{check_open_disc, normalize_angle, unit, TAU};
use crate::{Error, Result};

/// A closed counterclockwise arc of the unit circle.
///
/// Stored as a start angle in `[0, 2π)` and the length fraction
/// `a = σ(A) ∈ (0, 1]`; `a = 1` is the full circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawArc", into = "RawArc")]
pub struct Arc {
    start: f64,
    fraction: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArc {
    start: f64,
    end: f64,
}

impl Arc {
    /// The arc from `start` counterclockwise to `end`; `end − start` must lie
    /// in `(0, 2π]`.
    pub fn new(start: f64, end: f64) -> Result<Self> {
        let len = end - start;
        if !(start.is_finite() && len > 1e-12 && len <= TAU + 1e-12) {
            return Err(Error::Arc(format!("degenerate arc [{start}, {end}]")));
        }
        Self::from_fraction(start, (len / TAU).min(1.0))
    }

    pub fn from_fraction(start: f64, fraction: f64) -> Result<Self> {
        if !(start.is_finite() && fraction > 1e-12 / TAU && fraction <= 1.0) {
            return Err(Error::Arc(format!("length fraction {fraction} is not in (0, 1]")));
        }
        Ok(Self {
            start: normalize_angle(start),
            fraction,
        })
    }

    pub fn full() -> Self {
        Self {
            start: 0.0,
            fraction: 1.0,
        }
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    /// End angle, `start + 2πa` (not reduced).
    pub fn end(&self) -> f64 {
        self.start + TAU * self.fraction
    }

    pub fn fraction(&self) -> f64 {
        self.fraction
    }

    pub fn is_full(&self) -> bool {
        self.fraction >= 1.0
    }

    pub fn midpoint(&self) -> f64 {
        normalize_angle(self.start + PI * self.fraction)
    }

    /// Position of `theta` measured from the start, in `[0, 2π)`.
    fn offset(&self, theta: f64) -> f64 {
        normalize_angle(theta - self.start)
    }

    /// Closed-arc membership.
    pub fn contains(&self, theta: f64) -> bool {
        self.is_full() || self.offset(theta) <= TAU * self.fraction
    }

    /// Distance from `theta` to the nearest endpoint, zero for the full circle.
    pub fn endpoint_distance(&self, theta: f64) -> f64 {
        if self.is_full() {
            return f64::INFINITY;
        }
        let d = self.offset(theta);
        let len = TAU * self.fraction;
        [d, (d - len).abs(), TAU - d].into_iter().fold(f64::INFINITY, f64::min)
    }

    /// `W(z)` for `|z| < 1`; see [`harmonic_measure_arc`].
    pub fn analytic_measure(&self, z: Complex64) -> Complex64 {
        if self.is_full() {
            return Complex64::new(1.0, 0.0);
        }
        let (e1, e2) = (unit(self.start), unit(self.end()));
        let q = (e2 - z) / (e1 - z);
        let q0 = e2 / e1;
        Complex64::new(self.fraction, 0.0) - Complex64::new(0.0, 1.0 / PI) * (q / q0).ln()
    }

    /// Radial limit of `W` at `exp(iθ)`; `None` at the endpoints.
    ///
    /// The real part is the arc indicator. The imaginary part is
    /// `−(1/π) log|q|` with `|q| = |sin((θ₂ − θ)/2)| / |sin((θ₁ − θ)/2)|`.
    pub fn analytic_measure_boundary(&self, theta: f64) -> Option<Complex64> {
        if self.is_full() {
            return Some(Complex64::new(1.0, 0.0));
        }
        if self.endpoint_distance(theta) <= 1e-14 {
            return None;
        }
        let re = if self.contains(theta) { 1.0 } else { 0.0 };
        let num = ((self.end() - theta) / 2.0).sin().abs();
        let den = ((self.start - theta) / 2.0).sin().abs();
        Some(Complex64::new(re, -(num / den).ln() / PI))
    }
}

impl TryFrom<RawArc> for Arc {
    type Error = Error;
    fn try_from(r: RawArc) -> Result<Self> {
        Self::new(r.start, r.end)
    }
}

impl From<Arc> for RawArc {
    fn from(a: Arc) -> Self {
        RawArc {
            start: a.start,
            end: a.end(),
        }
    }
}

/// Harmonic measure `ω` of `A` at `z` and its analytic completion `W`.
///
/// With `q(z) = (e^{iθ₂} − z)/(e^{iθ₁} − z)`,
/// `W = a − (i/π) Log(q(z)/q(0))`, so `Re W = ω` and `Im W(0) = 0`. The
/// quotient `q(z)/q(0)` stays off the negative axis on the disc, so the
/// principal logarithm is continuous there.
pub fn harmonic_measure_arc(arc: &Arc, z: Complex64) -> Result<(f64, Complex64)> {
    check_open_disc(z)?;
    let w = arc.analytic_measure(z);
    Ok((w.re, w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_origin_is_the_fraction() {
        let a = Arc::from_fraction(1.0, 0.3).unwrap();
        let (om, w) = harmonic_measure_arc(&a, Complex64::new(0.0, 0.0)).unwrap();
        assert!((om - 0.3).abs() < 1e-15 && w.im.abs() < 1e-15);
        let (om, _) = harmonic_measure_arc(&Arc::full(), Complex64::new(0.5, 0.5)).unwrap();
        assert_eq!(om, 1.0);
    }

    #[test]
    fn near_the_middle_of_the_arc() {
        let a = Arc::from_fraction(0.5, 0.25).unwrap();
        let z = Complex64::from_polar(0.99, a.midpoint());
        assert!(harmonic_measure_arc(&a, z).unwrap().0 > 0.9);
    }

    #[test]
    fn boundary_limit_agrees_with_interior() {
        let a = Arc::from_fraction(5.5, 0.4).unwrap();
        for theta in [0.1, 1.0, 3.0, 5.0, 6.0] {
            let b = a.analytic_measure_boundary(theta).unwrap();
            let near = a.analytic_measure(Complex64::from_polar(1.0 - 1e-10, theta));
            assert!((b - near).norm() < 1e-7, "θ = {theta}: {b} vs {near}");
        }
    }

    #[test]
    fn rejects_degenerate_arcs() {
        assert!(Arc::new(1.0, 1.0).is_err());
        assert!(Arc::new(0.0, 7.0).is_err());
        assert!(Arc::from_fraction(0.0, 0.0).is_err());
        assert!(Arc::new(0.0, TAU).unwrap().is_full());
    }

    #[test]
    fn membership_wraps() {
        let a = Arc::from_fraction(6.0, 0.1).unwrap();
        assert!(a.contains(0.1) && a.contains(6.2) && !a.contains(3.0));
    }
}
