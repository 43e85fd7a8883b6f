use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boundary::{singular_boundary, AtomicMeasure, BlaschkeData, OuterSpec};
use crate::{poly, Error, Result};

/// One Nevanlinna function `B·h·s/t`.
///
/// `s` and `t` are singular inner functions of the atomic measures
/// `sing_num` and `sing_den`, which must not share atoms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawComponent", into = "RawComponent")]
pub struct FactoredComponent {
    blaschke: BlaschkeData,
    outer: OuterSpec,
    sing_num: AtomicMeasure,
    sing_den: AtomicMeasure,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    #[serde(default)]
    blaschke: BlaschkeData,
    outer: OuterSpec,
    #[serde(default)]
    sing_num: AtomicMeasure,
    #[serde(default)]
    sing_den: AtomicMeasure,
}

impl FactoredComponent {
    pub fn new(
        blaschke: BlaschkeData,
        outer: OuterSpec,
        sing_num: AtomicMeasure,
        sing_den: AtomicMeasure,
    ) -> Result<Self> {
        if !sing_num.disjoint(&sing_den) {
            return Err(Error::Disc("singular numerator and denominator share an atom".into()));
        }
        Ok(Self {
            blaschke,
            outer,
            sing_num,
            sing_den,
        })
    }

    /// Shorthand for an outer function times a Blaschke product.
    pub fn bounded(blaschke: BlaschkeData, outer: OuterSpec) -> Self {
        Self {
            blaschke,
            outer,
            sing_num: AtomicMeasure::empty(),
            sing_den: AtomicMeasure::empty(),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::bounded(BlaschkeData::empty(), OuterSpec::constant(c))
    }

    pub fn zero() -> Self {
        Self::constant(Complex64::new(0.0, 0.0))
    }

    /// Inner-outer factorization of a polynomial. Roots on the circle stay in
    /// the outer factor.
    pub fn from_polynomial(p: &[Complex64]) -> Self {
        if poly::is_zero(p) {
            return Self::zero();
        }
        let f = poly::inner_outer(p, 0.0);
        let outer = OuterSpec::Rational {
            num: f.outer,
            den: vec![Complex64::new(1.0, 0.0)],
        };
        Self::bounded(f.blaschke, outer)
    }

    pub fn blaschke(&self) -> &BlaschkeData {
        &self.blaschke
    }

    pub fn outer(&self) -> &OuterSpec {
        &self.outer
    }

    pub fn sing_num(&self) -> &AtomicMeasure {
        &self.sing_num
    }

    pub fn sing_den(&self) -> &AtomicMeasure {
        &self.sing_den
    }

    pub fn is_identically_zero(&self) -> bool {
        matches!(&self.outer, OuterSpec::Rational { num, .. } if poly::is_zero(num))
    }

    /// Angles of all singular atoms.
    pub fn atom_angles(&self) -> Vec<f64> {
        self.sing_num.angles().chain(self.sing_den.angles()).collect()
    }

    /// Value at a point of the open disc.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        if self.is_identically_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let s = crate::boundary::singular_at_pub(&self.sing_num, z);
        let t = crate::boundary::singular_at_pub(&self.sing_den, z);
        self.blaschke.eval(z) * self.outer.eval(z) * s / t
    }

    pub fn value_at_zero(&self) -> Complex64 {
        self.eval(Complex64::new(0.0, 0.0))
    }

    /// Radial limit at `exp(iθ)`, `None` at a singular atom.
    pub fn boundary_value(&self, theta: f64) -> Option<Complex64> {
        self.inner_boundary(theta).map(|v| v * self.outer.boundary_value(theta))
    }

    fn inner_boundary(&self, theta: f64) -> Option<Complex64> {
        let s = singular_boundary(&self.sing_num, theta)?;
        let t = singular_boundary(&self.sing_den, theta)?;
        Some(self.blaschke.eval(Complex64::from_polar(1.0, theta)) * s / t)
    }

    /// Radial limits at the `m` uniform angles.
    pub fn boundary_values(&self, m: usize) -> Vec<Option<Complex64>> {
        if self.is_identically_zero() {
            return vec![Some(Complex64::new(0.0, 0.0)); m];
        }
        let outer = self.outer.boundary_values(m);
        outer
            .into_iter()
            .enumerate()
            .map(|(k, h)| {
                let theta = crate::boundary::BoundaryGrid::<f64>::angle_of(m, k);
                self.inner_boundary(theta).map(|v| v * h)
            })
            .collect()
    }

    /// Multiply by a Blaschke product and a singular inner function.
    pub fn times_inner(&self, b: &BlaschkeData, mu: &AtomicMeasure) -> Result<Self> {
        let num = self.sing_num.sum(mu);
        let (num, den) = cancel(&num, &self.sing_den);
        Self::new(self.blaschke.product(b), self.outer.clone(), num, den)
    }

    /// Divide the inner part by `b` and `exp(−μ)`; both must divide it.
    pub fn divide_inner(&self, b: &BlaschkeData, mu: &AtomicMeasure) -> Result<Self> {
        if !mu.le(&self.sing_num) {
            return Err(Error::Disc("singular divisor does not divide the numerator".into()));
        }
        Self::new(
            self.blaschke.quotient(b)?,
            self.outer.clone(),
            self.sing_num.saturating_sub(mu),
            self.sing_den.clone(),
        )
    }

    pub fn with_outer(&self, outer: OuterSpec) -> Self {
        Self { outer, ..self.clone() }
    }
}

/// Cancel common atoms of a numerator and denominator measure.
fn cancel(num: &AtomicMeasure, den: &AtomicMeasure) -> (AtomicMeasure, AtomicMeasure) {
    (num.saturating_sub(den), den.saturating_sub(num))
}

impl TryFrom<RawComponent> for FactoredComponent {
    type Error = Error;
    fn try_from(r: RawComponent) -> Result<Self> {
        Self::new(r.blaschke, r.outer, r.sing_num, r.sing_den)
    }
}

impl From<FactoredComponent> for RawComponent {
    fn from(c: FactoredComponent) -> Self {
        RawComponent {
            blaschke: c.blaschke,
            outer: c.outer,
            sing_num: c.sing_num,
            sing_den: c.sing_den,
        }
    }
}
