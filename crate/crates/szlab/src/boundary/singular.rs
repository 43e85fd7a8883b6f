use num_complex::Complex64;

use super::{angle_distance, check_open_disc, measure::AtomicMeasure, unit, ANGLE_EPS};
use crate::Result;

/// The singular inner function `exp Σ m (z + ζ)/(z − ζ)` of an atomic measure.
pub fn singular_eval(mu: &AtomicMeasure, z: Complex64) -> Result<Complex64> {
    check_open_disc(z)?;
    Ok(singular_at(mu, z))
}

pub(crate) fn singular_at(mu: &AtomicMeasure, z: Complex64) -> Complex64 {
    let e: Complex64 = mu
        .atoms()
        .iter()
        .map(|&(a, m)| {
            let zeta = unit(a);
            m * (z + zeta) / (z - zeta)
        })
        .sum();
    e.exp()
}

/// Radial limit at `exp(iθ)`, which is `exp(−i Σ m cot((θ − θ_j)/2))`.
///
/// Returns `None` at an atom, where the limit does not exist.
pub fn singular_boundary(mu: &AtomicMeasure, theta: f64) -> Option<Complex64> {
    let mut phase = 0.0;
    for &(a, m) in mu.atoms() {
        if angle_distance(theta, a) <= ANGLE_EPS {
            return None;
        }
        phase -= m / ((theta - a) / 2.0).tan();
    }
    Some(unit(phase))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_atom_at_one() {
        let mu = AtomicMeasure::atom(0.0, 1.0).unwrap();
        let one = Complex64::new(1.0, 0.0);
        for z in [Complex64::new(0.2, 0.3), Complex64::new(-0.7, 0.1)] {
            let want = ((z + one) / (z - one)).exp();
            assert!((singular_eval(&mu, z).unwrap() - want).norm() < 1e-14);
        }
    }

    #[test]
    fn value_at_origin() {
        let mu = AtomicMeasure::new([(0.3, 0.7), (2.0, 1.1)]).unwrap();
        let s0 = singular_eval(&mu, Complex64::new(0.0, 0.0)).unwrap();
        assert!((s0 - Complex64::new((-1.8f64).exp(), 0.0)).norm() < 1e-15);
        let empty = AtomicMeasure::empty();
        assert_eq!(
            singular_eval(&empty, Complex64::new(0.5, 0.0)).unwrap(),
            Complex64::new(1.0, 0.0)
        );
    }

    #[test]
    fn boundary_limit_matches_radial_approach() {
        let mu = AtomicMeasure::new([(0.3, 0.7), (2.0, 1.1)]).unwrap();
        let theta = 4.0;
        let limit = singular_boundary(&mu, theta).unwrap();
        let near = singular_at(&mu, Complex64::from_polar(1.0 - 1e-9, theta));
        assert!((limit - near).norm() < 1e-7);
        assert!((limit.norm() - 1.0).abs() < 1e-15);
        assert!(singular_boundary(&mu, 0.3).is_none());
    }
}
