use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{fft, grid::horner_eval, unit, BoundaryGrid};
use crate::{poly, Error, Result};

/// Root moduli within this of 1 count as lying on the circle.
const CIRCLE_TOL: f64 = 1e-10;

/// Outer function with prescribed boundary log-modulus on a grid.
///
/// `log|h|` is the Poisson extension of the trigonometric interpolant of the
/// samples and `arg h` its conjugate, so `h(0) = exp(mean)` is positive.
/// An optional unimodular `phase` multiplies the whole function.
#[derive(Debug, Clone)]
pub struct GridOuter {
    log_modulus: BoundaryGrid,
    phase: Complex64,
    coeffs: Vec<Complex64>,
}

impl GridOuter {
    pub fn new(log_modulus: BoundaryGrid) -> Self {
        Self::with_phase(log_modulus, Complex64::new(1.0, 0.0))
    }

    pub fn with_phase(log_modulus: BoundaryGrid, phase: Complex64) -> Self {
        let mut coeffs = log_modulus.analytic_coefficients();
        coeffs[0].im = phase.arg();
        Self {
            log_modulus,
            phase: phase / phase.norm(),
            coeffs,
        }
    }

    pub fn phase(&self) -> Complex64 {
        self.phase
    }

    pub fn log_modulus(&self) -> &BoundaryGrid {
        &self.log_modulus
    }

    /// `log h(z)` on the closed disc.
    pub fn log_eval(&self, z: Complex64) -> Complex64 {
        horner_eval(&self.coeffs, z)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.log_eval(z).exp()
    }

    /// `log h` at the `m` uniform boundary angles.
    pub fn log_boundary(&self, m: usize) -> Vec<Complex64> {
        fft::eval_on_circle(&self.coeffs, m)
    }
}

impl PartialEq for GridOuter {
    fn eq(&self, other: &Self) -> bool {
        self.log_modulus == other.log_modulus && (self.phase - other.phase).norm() < 1e-15
    }
}

/// Build the outer function whose boundary log-modulus is `w`.
pub fn outer_from_log_modulus(w: &BoundaryGrid) -> GridOuter {
    GridOuter::new(w.clone())
}

/// The outer factor of a Nevanlinna function: rational data or a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawOuter", into = "RawOuter")]
pub enum OuterSpec {
    /// `num/den`; neither vanishes in the open disc.
    Rational {
        num: Vec<Complex64>,
        den: Vec<Complex64>,
    },
    Grid(GridOuter),
}

impl OuterSpec {
    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::Rational {
            num: vec![c],
            den: vec![Complex64::new(1.0, 0.0)],
        }
    }

    pub fn polynomial(num: Vec<Complex64>) -> Result<Self> {
        Self::rational(num, vec![Complex64::new(1.0, 0.0)])
    }

    pub fn rational(num: Vec<Complex64>, den: Vec<Complex64>) -> Result<Self> {
        let num = poly::trim(&num);
        let den = poly::trim(&den);
        if poly::is_zero(&den) {
            return Err(Error::Outer("denominator must be nonzero".into()));
        }
        if poly::is_zero(&num) {
            // The zero function: allowed so constant discs may have zero coordinates.
            return Ok(Self::Rational {
                num,
                den: vec![Complex64::new(1.0, 0.0)],
            });
        }
        if num.iter().chain(&den).any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Outer("coefficients must be finite".into()));
        }
        let nr = poly::roots(&num);
        let dr = poly::roots(&den);
        for r in nr.iter().chain(&dr) {
            if r.norm() < 1.0 - CIRCLE_TOL {
                return Err(Error::Outer(format!("root {r} lies in the open unit disc")));
            }
        }
        for a in &nr {
            if dr.iter().any(|b| (a - b).norm() < 1e-9) {
                return Err(Error::Outer(format!("numerator and denominator share the root {a}")));
            }
        }
        Ok(Self::Rational { num, den })
    }

    pub fn grid(log_modulus: BoundaryGrid) -> Self {
        Self::Grid(GridOuter::new(log_modulus))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Self::Rational { .. })
    }

    /// Evaluate on the closed disc. Rational data may have poles on the circle.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Self::Rational { num, den } => horner_eval(num, z) / horner_eval(den, z),
            Self::Grid(g) => g.eval(z),
        }
    }

    pub fn boundary_value(&self, theta: f64) -> Complex64 {
        self.eval(unit(theta))
    }

    /// Boundary values at the `m` uniform angles.
    pub fn boundary_values(&self, m: usize) -> Vec<Complex64> {
        match self {
            Self::Rational { .. } => (0..m)
                .map(|k| self.boundary_value(BoundaryGrid::<f64>::angle_of(m, k)))
                .collect(),
            Self::Grid(g) => g.log_boundary(m).into_iter().map(|v| v.exp()).collect(),
        }
    }

    pub fn value_at_zero(&self) -> Complex64 {
        self.eval(Complex64::new(0.0, 0.0))
    }

    /// Bounded on the disc: no pole on the closed disc.
    pub fn is_bounded(&self) -> bool {
        match self {
            Self::Rational { den, .. } => poly::roots(den).iter().all(|r| r.norm() > 1.0 + CIRCLE_TOL),
            Self::Grid(_) => true,
        }
    }

    /// Split `h = u/v` with `u` and `v` bounded outer functions.
    pub fn split(&self) -> (Self, Self) {
        match self {
            Self::Rational { num, den } => (
                Self::Rational {
                    num: num.clone(),
                    den: vec![Complex64::new(1.0, 0.0)],
                },
                Self::Rational {
                    num: den.clone(),
                    den: vec![Complex64::new(1.0, 0.0)],
                },
            ),
            Self::Grid(g) => {
                let w = g.log_modulus.samples();
                let pos = w.iter().map(|x| x.max(0.0)).collect();
                let neg = w.iter().map(|x| (-x).max(0.0)).collect();
                (
                    Self::Grid(GridOuter::with_phase(
                        BoundaryGrid::new(pos).expect("finite samples"),
                        g.phase,
                    )),
                    Self::grid(BoundaryGrid::new(neg).expect("finite samples")),
                )
            }
        }
    }

    /// Log-modulus samples on a grid of the given size.
    fn log_modulus_on(&self, size: usize) -> Result<BoundaryGrid> {
        match self {
            Self::Grid(g) if g.log_modulus.size() == size => Ok(g.log_modulus.clone()),
            Self::Grid(g) => BoundaryGrid::new(g.log_boundary(size).iter().map(|v| v.re).collect()),
            Self::Rational { .. } => {
                BoundaryGrid::new(self.boundary_values(size).iter().map(|v| v.norm().ln()).collect())
                    .map_err(|_| Error::Outer("rational factor vanishes on the grid; cannot mix with grid data".into()))
            }
        }
    }

    /// Product of two outer functions. Mixed rational and grid data is
    /// resampled onto the finer grid.
    pub fn product(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Self::Rational { num: a, den: b }, Self::Rational { num: c, den: d }) => Ok(Self::Rational {
                num: poly::mul(a, c),
                den: poly::mul(b, d),
            }),
            _ => {
                let size = [self, other]
                    .iter()
                    .filter_map(|o| match o {
                        Self::Grid(g) => Some(g.log_modulus.size()),
                        _ => None,
                    })
                    .max()
                    .expect("at least one grid factor");
                let a = self.log_modulus_on(size)?;
                let b = other.log_modulus_on(size)?;
                let sum = a.samples().iter().zip(b.samples()).map(|(x, y)| x + y).collect();
                Ok(Self::Grid(GridOuter::with_phase(
                    BoundaryGrid::new(sum)?,
                    self.phase() * other.phase(),
                )))
            }
        }
    }

    /// The unimodular constant `h(0)/|h(0)|`.
    pub fn phase(&self) -> Complex64 {
        match self {
            Self::Grid(g) => g.phase,
            Self::Rational { .. } => {
                let v = self.value_at_zero();
                v / v.norm()
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum RawOuter {
    Rational { num: Vec<(f64, f64)>, den: Vec<(f64, f64)> },
    Grid(RawGrid),
}

/// A grid outer is a bare sample array, or an object when it carries a phase.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawGrid {
    Samples(BoundaryGrid),
    Phased {
        log_modulus: BoundaryGrid,
        phase: (f64, f64),
    },
}

impl TryFrom<RawOuter> for OuterSpec {
    type Error = Error;
    fn try_from(raw: RawOuter) -> Result<Self> {
        let cx = |v: Vec<(f64, f64)>| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
        match raw {
            RawOuter::Rational { num, den } => Self::rational(cx(num), cx(den)),
            RawOuter::Grid(RawGrid::Samples(g)) => Ok(Self::grid(g)),
            RawOuter::Grid(RawGrid::Phased {
                log_modulus,
                phase: (re, im),
            }) => {
                let p = Complex64::new(re, im);
                if !((p.norm() - 1.0).abs() < 1e-9) {
                    return Err(Error::Outer("grid phase must be unimodular".into()));
                }
                Ok(Self::Grid(GridOuter::with_phase(log_modulus, p)))
            }
        }
    }
}

impl From<OuterSpec> for RawOuter {
    fn from(o: OuterSpec) -> Self {
        let pairs = |v: Vec<Complex64>| v.into_iter().map(|c| (c.re, c.im)).collect();
        match o {
            OuterSpec::Rational { num, den } => RawOuter::Rational {
                num: pairs(num),
                den: pairs(den),
            },
            OuterSpec::Grid(g) if g.phase == Complex64::new(1.0, 0.0) => {
                RawOuter::Grid(RawGrid::Samples(g.log_modulus))
            }
            OuterSpec::Grid(g) => RawOuter::Grid(RawGrid::Phased {
                log_modulus: g.log_modulus,
                phase: (g.phase.re, g.phase.im),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::TAU;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trivial_log_modulus_gives_one() {
        let h = outer_from_log_modulus(&BoundaryGrid::from_fn(64, |_| 0.0).unwrap());
        assert!((h.eval(c(0.4, -0.2)) - c(1.0, 0.0)).norm() < 1e-15);
        let h = outer_from_log_modulus(&BoundaryGrid::from_fn(64, f64::cos).unwrap());
        assert!((h.eval(c(0.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-14);
        // cos θ is the boundary value of Re z, so h = e^z.
        assert!((h.eval(c(0.3, 0.4)) - c(0.3, 0.4).exp()).norm() < 1e-13);
    }

    #[test]
    fn arc_indicator_value_at_origin() {
        let (a, m) = (0.25, 3.0);
        let w = BoundaryGrid::from_fn(1 << 12, |t| if t < a * TAU { 0.0 } else { -m }).unwrap();
        let h = outer_from_log_modulus(&w);
        assert!((h.eval(c(0.0, 0.0)).re - (-m * (1.0 - a)).exp()).abs() < 1e-12);
    }

    #[test]
    fn rational_validation() {
        assert!(OuterSpec::rational(vec![c(1.0, 0.0)], vec![c(1.0, 0.0), c(-1.0, 0.0)]).is_ok());
        assert!(OuterSpec::polynomial(vec![c(0.5, 0.0), c(1.0, 0.0)]).is_err());
        assert!(OuterSpec::rational(vec![c(-2.0, 0.0), c(1.0, 0.0)], vec![c(-2.0, 0.0), c(1.0, 0.0)]).is_err());
        let pole = OuterSpec::rational(vec![c(1.0, 0.0)], vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert!(!pole.is_bounded());
        assert!(OuterSpec::rational(vec![c(1.0, 0.0)], vec![c(3.0, 0.0), c(-1.0, 0.0)])
            .unwrap()
            .is_bounded());
    }

    #[test]
    fn split_recovers_quotient() {
        let w = BoundaryGrid::from_fn(256, |t| (3.0 * t).sin() - 0.5 * t.cos()).unwrap();
        let h = OuterSpec::Grid(GridOuter::with_phase(w, c(0.6, 0.8)));
        let (u, v) = h.split();
        for z in [c(0.1, 0.5), c(-0.7, 0.0)] {
            assert!((u.eval(z) / v.eval(z) - h.eval(z)).norm() < 1e-12);
        }
    }

    #[test]
    fn mixed_product_and_round_trip() {
        let w = BoundaryGrid::from_fn(1024, |t| 0.3 * t.cos()).unwrap();
        let g = OuterSpec::grid(w);
        let r = OuterSpec::polynomial(vec![c(0.0, 3.0), c(1.0, 0.0)]).unwrap();
        let p = g.product(&r).unwrap();
        for z in [c(0.2, 0.1), c(-0.5, 0.5)] {
            let want = g.eval(z) * r.eval(z);
            assert!((p.eval(z) - want).norm() < 1e-10 * want.norm());
        }
        for o in [g, r, p] {
            let s = serde_json::to_string(&o).unwrap();
            assert_eq!(serde_json::from_str::<OuterSpec>(&s).unwrap(), o);
        }
    }
}
