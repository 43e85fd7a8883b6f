use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{check_open_disc, fft, TAU};
use crate::{Error, Result};

/// Uniform samples on the unit circle at the angles `2πk/size`.
///
/// The size is a power of two and at least 8. Real grids carry boundary
/// log-moduli and indicators; complex grids carry boundary maps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<T>", into = "Vec<T>")]
#[serde(bound(serialize = "T: Serialize + Clone", deserialize = "T: Deserialize<'de> + GridSample"))]
pub struct BoundaryGrid<T = f64> {
    samples: Vec<T>,
}

/// Scalar types that may live on a [`BoundaryGrid`].
pub trait GridSample: Copy {
    fn is_finite_sample(&self) -> bool;
}

impl GridSample for f64 {
    fn is_finite_sample(&self) -> bool {
        self.is_finite()
    }
}

impl GridSample for Complex64 {
    fn is_finite_sample(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl<T: GridSample> BoundaryGrid<T> {
    pub fn new(samples: Vec<T>) -> Result<Self> {
        let n = samples.len();
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::Grid(format!(
                "size must be a power of two and at least 8, got {n}"
            )));
        }
        if let Some(k) = samples.iter().position(|s| !s.is_finite_sample()) {
            return Err(Error::Grid(format!("sample {k} is not finite")));
        }
        Ok(Self { samples })
    }

    /// Sample `f` at the grid angles.
    pub fn from_fn(size: usize, f: impl FnMut(f64) -> T) -> Result<Self> {
        Self::new((0..size).map(|k| Self::angle_of(size, k)).map(f).collect())
    }

    pub fn angle_of(size: usize, k: usize) -> f64 {
        TAU * k as f64 / size as f64
    }

    pub fn size(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    pub fn angle(&self, k: usize) -> f64 {
        Self::angle_of(self.size(), k)
    }
}

impl BoundaryGrid<f64> {
    /// Mean of the samples, which is the quadrature of `σ`.
    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.size() as f64
    }

    pub fn max(&self) -> f64 {
        self.samples.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Taylor coefficients of the holomorphic `F` with `Re F = u` on the
    /// trigonometric interpolant and `Im F(0) = 0`.
    pub(crate) fn analytic_coefficients(&self) -> Vec<Complex64> {
        let n = self.size();
        let c = fft::real_coefficients(&self.samples);
        let mut a = Vec::with_capacity(n / 2 + 1);
        a.push(Complex64::new(c[0].re, 0.0));
        for ck in &c[1..n / 2] {
            a.push(2.0 * ck);
        }
        a.push(Complex64::new(c[n / 2].re, 0.0));
        a
    }
}

impl<T: GridSample> TryFrom<Vec<T>> for BoundaryGrid<T> {
    type Error = Error;
    fn try_from(v: Vec<T>) -> Result<Self> {
        Self::new(v)
    }
}

impl<T> From<BoundaryGrid<T>> for Vec<T> {
    fn from(g: BoundaryGrid<T>) -> Self {
        g.samples
    }
}

pub(crate) fn horner_eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Poisson integral at `z` of the trigonometric interpolant of `u`.
pub fn poisson_value(u: &BoundaryGrid, z: Complex64) -> Result<f64> {
    check_open_disc(z)?;
    if z == Complex64::new(0.0, 0.0) {
        return Ok(u.mean());
    }
    Ok(horner_eval(&u.analytic_coefficients(), z).re)
}

/// Boundary values of the harmonic conjugate normalized to vanish at 0.
///
/// Uses the Fourier multiplier `-i·sign(k)`; the mean and the Nyquist mode
/// are dropped.
pub fn conjugate_grid(u: &BoundaryGrid) -> BoundaryGrid {
    let n = u.size();
    let mut c = fft::real_coefficients(u.samples());
    c[0] = Complex64::new(0.0, 0.0);
    c[n / 2] = Complex64::new(0.0, 0.0);
    for (k, ck) in c.iter_mut().enumerate().skip(1) {
        let sign = if k < n / 2 { 1.0 } else { -1.0 };
        *ck *= Complex64::new(0.0, -sign);
    }
    fft::inverse(&mut c);
    BoundaryGrid {
        samples: c.iter().map(|v| v.re).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rejects_bad_sizes() {
        assert!(BoundaryGrid::new(vec![0.0; 12]).is_err());
        assert!(BoundaryGrid::new(vec![0.0; 4]).is_err());
        assert!(BoundaryGrid::new(vec![f64::NAN; 8]).is_err());
    }

    #[test]
    fn poisson_of_constant_and_cosine() {
        let one = BoundaryGrid::from_fn(64, |_| 1.0).unwrap();
        let z = Complex64::new(0.3, 0.1);
        assert_abs_diff_eq!(poisson_value(&one, z).unwrap(), 1.0, epsilon = 1e-14);
        let cos = BoundaryGrid::from_fn(64, f64::cos).unwrap();
        assert_abs_diff_eq!(poisson_value(&cos, z).unwrap(), 0.3, epsilon = 1e-14);
        assert!(poisson_value(&cos, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn poisson_of_quarter_indicator_at_origin() {
        let ind = BoundaryGrid::from_fn(1024, |t| if t < TAU / 4.0 { 1.0 } else { 0.0 }).unwrap();
        assert_abs_diff_eq!(poisson_value(&ind, Complex64::new(0.0, 0.0)).unwrap(), 0.25);
    }

    #[test]
    fn conjugates_of_simple_modes() {
        type Mode = fn(f64) -> f64;
        let cases: [(Mode, Mode); 3] = [
            (f64::cos, f64::sin),
            (|t| (2.0 * t).cos(), |t| (2.0 * t).sin()),
            (|_| 3.5, |_| 0.0),
        ];
        for (u, v) in cases {
            let g = conjugate_grid(&BoundaryGrid::from_fn(32, u).unwrap());
            for k in 0..32 {
                assert_abs_diff_eq!(g.samples()[k], v(g.angle(k)), epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn serde_round_trip_validates() {
        let g = BoundaryGrid::from_fn(8, f64::sin).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<BoundaryGrid>(&s).unwrap(), g);
        assert!(serde_json::from_str::<BoundaryGrid>("[1.0, 2.0]").is_err());
    }
}
