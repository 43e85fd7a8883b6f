use std::f64::consts::PI;

use num_complex::Complex64;

use crate::boundary::{check_open_disc, Arc};
use crate::Result;

/// `α(z) = exp(−m(1 − W(z)))` for the analytic harmonic measure `W` of `arc`.
///
/// `|α| = exp(−m(1 − ω))`, so `α` maps the disc into itself, has modulus 1 on
/// the arc and `e^{−m}` off it, and `α(0) = e^{−m(1−a)} > 0`.
pub fn alpha(arc: &Arc, m: u32, z: Complex64) -> Result<Complex64> {
    check_open_disc(z)?;
    Ok(alpha_unchecked(arc, m, z))
}

pub(crate) fn alpha_unchecked(arc: &Arc, m: u32, z: Complex64) -> Complex64 {
    if m == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let w = arc.analytic_measure(z);
    (-(m as f64) * (Complex64::new(1.0, 0.0) - w)).exp()
}

/// Radial limit of `α` at `exp(iθ)`; `None` at the arc endpoints.
pub fn alpha_boundary(arc: &Arc, m: u32, theta: f64) -> Option<Complex64> {
    if m == 0 {
        return Some(Complex64::new(1.0, 0.0));
    }
    let w = arc.analytic_measure_boundary(theta)?;
    Some((-(m as f64) * (Complex64::new(1.0, 0.0) - w)).exp())
}

/// Moments `∫_A (α*)^k dσ` for `k = 0..=k_max`.
///
/// On the arc `α* = exp(i m y)` with `y = Im W*`. Since `W` maps the disc
/// conformally onto the strip `0 < Re W < 1` with `W(0) = a`, the
/// pushforward of `σ|_A` to the line `Re W = 1` has the strip Poisson
/// density `sin(πa) / (2(cosh πy + cos πa))`. The moments are integrated
/// against that density with the trapezoid rule, which converges
/// geometrically here; the step resolves the oscillation `e^{ikmy}` and the
/// poles of the density at distance `1 − a` from the real axis.
pub fn alpha_moments(arc: &Arc, m: u32, k_max: usize) -> Vec<Complex64> {
    let a = arc.fraction();
    if arc.is_full() || m == 0 {
        // α is constant; the moments are those of σ on A.
        return vec![Complex64::new(a, 0.0); k_max + 1];
    }
    let omega_max = k_max as f64 * m as f64;
    let h = 2.0 * PI / (omega_max + 45.0 / (1.0 - a).max(1e-6));
    let half = 40.0 / PI;
    let steps = (half / h).ceil() as usize;
    let (s, c) = (PI * a).sin_cos();
    let density = |y: f64| s / (2.0 * ((PI * y).cosh() + c));
    (0..=k_max)
        .map(|k| {
            let omega = k as f64 * m as f64;
            let mut acc = Complex64::new(density(0.0), 0.0);
            for i in 1..=steps {
                let y = i as f64 * h;
                // The density is even, so pairs ±y contribute 2 cos(ωy).
                acc += 2.0 * density(y) * (omega * y).cos();
            }
            acc * h
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_origin() {
        let arc = Arc::from_fraction(0.3, 0.5).unwrap();
        let v = alpha(&arc, 2, Complex64::new(0.0, 0.0)).unwrap();
        assert!((v - Complex64::new((-1.0f64).exp(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn zeroth_moment_is_arc_length() {
        let arc = Arc::from_fraction(1.0, 0.37).unwrap();
        for m in [1, 7, 300] {
            let mo = alpha_moments(&arc, m, 0);
            assert!((mo[0].re - 0.37).abs() < 1e-12, "{m}: {}", mo[0]);
        }
    }
}
