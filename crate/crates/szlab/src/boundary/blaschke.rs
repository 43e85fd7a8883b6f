use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Zeros closer than this are merged into one zero of higher multiplicity.
const ZERO_EPS: f64 = 1e-12;

/// A finite Blaschke product, stored as its zeros with multiplicities.
///
/// Factors use the convention `(|a|/a)(a − z)/(1 − āz)`, and `z` for a zero
/// at the origin, so `B(0) = Π|a|^m > 0` when no zero sits at the origin.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64, u32)>", into = "Vec<(f64, f64, u32)>")]
pub struct BlaschkeData {
    zeros: Vec<(Complex64, u32)>,
}

impl BlaschkeData {
    pub fn new(zeros: impl IntoIterator<Item = (Complex64, u32)>) -> Result<Self> {
        let mut out = Self::default();
        for (a, m) in zeros {
            if !(a.norm() < 1.0) {
                return Err(Error::Blaschke(format!("zero {a} is not inside the unit disc")));
            }
            if m == 0 {
                return Err(Error::Blaschke(format!("zero {a} has multiplicity 0")));
            }
            out.push(a, m);
        }
        Ok(out)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    fn push(&mut self, a: Complex64, m: u32) {
        match self.zeros.iter_mut().find(|(b, _)| (a - *b).norm() <= ZERO_EPS) {
            Some(entry) => entry.1 += m,
            None => self.zeros.push((a, m)),
        }
    }

    pub fn zeros(&self) -> &[(Complex64, u32)] {
        &self.zeros
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// Number of zeros counted with multiplicity.
    pub fn degree(&self) -> u32 {
        self.zeros.iter().map(|z| z.1).sum()
    }

    pub fn multiplicity(&self, a: Complex64) -> u32 {
        self.zeros
            .iter()
            .find(|(b, _)| (a - *b).norm() <= ZERO_EPS)
            .map_or(0, |z| z.1)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, &(a, m)| acc * factor(a, z).powu(m))
    }

    /// `log|B(0)| = Σ m log|a|`, which is `-∞` when a zero sits at the origin.
    pub fn log_abs_at_zero(&self) -> f64 {
        self.zeros.iter().map(|&(a, m)| m as f64 * a.norm().ln()).sum()
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for &(a, m) in &other.zeros {
            out.push(a, m);
        }
        out
    }

    /// Divide by `d`, which must divide `self`.
    pub fn quotient(&self, d: &Self) -> Result<Self> {
        let mut zeros = Vec::new();
        for &(a, m) in &self.zeros {
            let k = d.multiplicity(a);
            if m > k {
                zeros.push((a, m - k));
            }
        }
        for &(a, k) in &d.zeros {
            if self.multiplicity(a) < k {
                return Err(Error::Blaschke(format!("divisor has zero {a} of excess multiplicity")));
            }
        }
        Ok(Self { zeros })
    }

    /// Greatest common divisor: per-zero minimum multiplicity.
    pub fn gcd(items: &[&Self]) -> Self {
        let Some((first, rest)) = items.split_first() else {
            return Self::default();
        };
        let zeros = first
            .zeros
            .iter()
            .filter_map(|&(a, m)| {
                let k = rest.iter().map(|b| b.multiplicity(a)).fold(m, u32::min);
                (k > 0).then_some((a, k))
            })
            .collect();
        Self { zeros }
    }
}

fn factor(a: Complex64, z: Complex64) -> Complex64 {
    if a == Complex64::new(0.0, 0.0) {
        return z;
    }
    let r = a.norm();
    (r / a) * (a - z) / (Complex64::new(1.0, 0.0) - a.conj() * z)
}

/// Evaluate the Blaschke product on the closed unit disc.
pub fn blaschke_eval(b: &BlaschkeData, z: Complex64) -> Result<Complex64> {
    if !(z.norm() <= 1.0 + 1e-12) {
        return Err(Error::Blaschke(format!(
            "evaluation point {z} is outside the closed disc"
        )));
    }
    Ok(b.eval(z))
}

impl TryFrom<Vec<(f64, f64, u32)>> for BlaschkeData {
    type Error = Error;
    fn try_from(v: Vec<(f64, f64, u32)>) -> Result<Self> {
        Self::new(v.into_iter().map(|(re, im, m)| (Complex64::new(re, im), m)))
    }
}

impl From<BlaschkeData> for Vec<(f64, f64, u32)> {
    fn from(b: BlaschkeData) -> Self {
        b.zeros.into_iter().map(|(a, m)| (a.re, a.im, m)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn value_at_origin_is_the_modulus() {
        let b = BlaschkeData::new([(c(0.5, 0.0), 1)]).unwrap();
        assert!((b.eval(c(0.0, 0.0)) - c(0.5, 0.0)).norm() < 1e-15);
        let rot = BlaschkeData::new([(c(0.0, 0.5), 2)]).unwrap();
        assert!((rot.eval(c(0.0, 0.0)) - c(0.25, 0.0)).norm() < 1e-15);
        assert_eq!(BlaschkeData::empty().eval(c(0.3, 0.2)), c(1.0, 0.0));
    }

    #[test]
    fn unimodular_on_the_circle() {
        let b = BlaschkeData::new([(c(0.5, 0.0), 1), (c(0.0, 0.0), 2), (c(-0.3, 0.7), 1)]).unwrap();
        for k in 0..64 {
            let z = Complex64::from_polar(1.0, k as f64 * 0.1);
            assert!((b.eval(z).norm() - 1.0).abs() < 1e-12);
        }
        assert!(blaschke_eval(&b, c(1.5, 0.0)).is_err());
    }

    #[test]
    fn rejects_zeros_outside() {
        assert!(BlaschkeData::new([(c(1.0, 0.0), 1)]).is_err());
        assert!(BlaschkeData::new([(c(0.2, 0.0), 0)]).is_err());
    }

    #[test]
    fn gcd_and_quotient() {
        let a = BlaschkeData::new([(c(0.5, 0.0), 2), (c(0.1, 0.1), 1)]).unwrap();
        let b = BlaschkeData::new([(c(0.5, 0.0), 1)]).unwrap();
        let g = BlaschkeData::gcd(&[&a, &b]);
        assert_eq!(g.zeros(), &[(c(0.5, 0.0), 1)]);
        let q = a.quotient(&g).unwrap();
        assert_eq!(q.degree(), 2);
        assert!(b.quotient(&a).is_err());
        let merged = BlaschkeData::new([(c(0.5, 0.0), 1), (c(0.5, 0.0), 1)]).unwrap();
        assert_eq!(merged.zeros(), &[(c(0.5, 0.0), 2)]);
    }
}
