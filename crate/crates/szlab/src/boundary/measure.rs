use serde::{Deserialize, Serialize};

use super::{angle_distance, normalize_angle};
use crate::{Error, Result};

/// Atoms closer than this (in radians) are the same point of the circle.
pub const ANGLE_EPS: f64 = 1e-12;

/// A finite positive atomic measure on the unit circle.
///
/// Atoms are kept sorted by angle in `[0, 2π)` with strictly positive
/// masses. Serialized as a list of `[angle, mass]` pairs.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct AtomicMeasure {
    atoms: Vec<(f64, f64)>,
}

impl AtomicMeasure {
    pub fn new(atoms: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut atoms: Vec<(f64, f64)> = atoms.into_iter().map(|(a, m)| (normalize_angle(a), m)).collect();
        for &(a, m) in &atoms {
            if !a.is_finite() || !(m.is_finite() && m > 0.0) {
                return Err(Error::Measure(format!(
                    "atom ({a}, {m}) needs a finite angle and positive mass"
                )));
            }
        }
        atoms.sort_by(|x, y| x.0.total_cmp(&y.0));
        for w in atoms.windows(2) {
            if angle_distance(w[0].0, w[1].0) <= ANGLE_EPS {
                return Err(Error::Measure(format!("duplicate atom at angle {}", w[0].0)));
            }
        }
        if atoms.len() > 1 {
            let (first, last) = (atoms[0].0, atoms[atoms.len() - 1].0);
            if angle_distance(first, last) <= ANGLE_EPS {
                return Err(Error::Measure(format!("duplicate atom at angle {first}")));
            }
        }
        Ok(Self { atoms })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// A single atom.
    pub fn atom(angle: f64, mass: f64) -> Result<Self> {
        Self::new([(angle, mass)])
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total(&self) -> f64 {
        // Folding from +0 keeps the empty measure's mass at +0 rather than −0.
        self.atoms.iter().fold(0.0, |acc, a| acc + a.1)
    }

    /// Mass carried at `angle` (zero when there is no atom there).
    pub fn mass_at(&self, angle: f64) -> f64 {
        self.atoms
            .iter()
            .find(|a| angle_distance(a.0, angle) <= ANGLE_EPS)
            .map_or(0.0, |a| a.1)
    }

    pub fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        self.atoms.iter().map(|a| a.0)
    }

    /// `self ≤ other` atom by atom.
    pub fn le(&self, other: &Self) -> bool {
        self.atoms.iter().all(|&(a, m)| m <= other.mass_at(a))
    }

    /// True when no atom of `self` is an atom of `other`.
    pub fn disjoint(&self, other: &Self) -> bool {
        self.atoms.iter().all(|&(a, _)| other.mass_at(a) == 0.0)
    }

    pub fn sum(&self, other: &Self) -> Self {
        combine(&[self, other], |ms| ms.iter().sum())
    }

    /// Positive part of `self − other`.
    pub fn saturating_sub(&self, other: &Self) -> Self {
        combine(&[self, other], |ms| ms[0] - ms[1])
    }

    pub fn scale(&self, factor: f64) -> Self {
        combine(&[self], |ms| ms[0] * factor)
    }
}

/// Apply `op` to the per-angle masses of `ms` and keep positive results.
fn combine(ms: &[&AtomicMeasure], op: impl Fn(&[f64]) -> f64) -> AtomicMeasure {
    let mut angles: Vec<f64> = ms.iter().flat_map(|m| m.angles()).collect();
    angles.sort_by(f64::total_cmp);
    let mut unique: Vec<f64> = Vec::with_capacity(angles.len());
    for a in angles {
        if unique.last().is_none_or(|&b| angle_distance(a, b) > ANGLE_EPS)
            && unique.first().is_none_or(|&b| angle_distance(a, b) > ANGLE_EPS)
        {
            unique.push(a);
        }
    }
    let atoms = unique
        .into_iter()
        .filter_map(|a| {
            let masses: Vec<f64> = ms.iter().map(|m| m.mass_at(a)).collect();
            let v = op(&masses);
            (v > 0.0).then_some((a, v))
        })
        .collect();
    AtomicMeasure { atoms }
}

/// Least upper bound: per-angle maximum. The join of nothing is zero.
pub fn measure_join(ms: &[AtomicMeasure]) -> AtomicMeasure {
    let refs: Vec<&AtomicMeasure> = ms.iter().collect();
    combine(&refs, |v| v.iter().copied().fold(0.0, f64::max))
}

/// Greatest lower bound: per-angle minimum. The meet of nothing is zero.
pub fn measure_meet(ms: &[AtomicMeasure]) -> AtomicMeasure {
    if ms.is_empty() {
        return AtomicMeasure::empty();
    }
    let refs: Vec<&AtomicMeasure> = ms.iter().collect();
    combine(&refs, |v| v.iter().copied().fold(f64::INFINITY, f64::min))
}

impl TryFrom<Vec<(f64, f64)>> for AtomicMeasure {
    type Error = Error;
    fn try_from(v: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<AtomicMeasure> for Vec<(f64, f64)> {
    fn from(m: AtomicMeasure) -> Self {
        m.atoms
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn pair() -> (AtomicMeasure, AtomicMeasure) {
        (
            AtomicMeasure::atom(0.0, 0.3).unwrap(),
            AtomicMeasure::new([(0.0, 0.2), (FRAC_PI_2, 0.5)]).unwrap(),
        )
    }

    #[test]
    fn join_and_meet_of_the_pair() {
        let (a, b) = pair();
        let j = measure_join(&[a.clone(), b.clone()]);
        assert_eq!(j.atoms(), &[(0.0, 0.3), (FRAC_PI_2, 0.5)]);
        assert!((j.total() - 0.8).abs() < 1e-15);
        let m = measure_meet(&[a.clone(), b]);
        assert_eq!(m.atoms(), &[(0.0, 0.2)]);
        assert_eq!(measure_join(std::slice::from_ref(&a)), a);
    }

    #[test]
    fn rejects_bad_atoms() {
        assert!(AtomicMeasure::atom(0.0, 0.0).is_err());
        assert!(AtomicMeasure::atom(0.0, -1.0).is_err());
        assert!(AtomicMeasure::new([(0.1, 1.0), (0.1 + std::f64::consts::TAU, 1.0)]).is_err());
    }

    #[test]
    fn angles_wrap_into_range() {
        let m = AtomicMeasure::atom(-FRAC_PI_2, 1.0).unwrap();
        assert!((m.atoms()[0].0 - 3.0 * FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn difference_clips_at_zero() {
        let (a, b) = pair();
        let d = b.saturating_sub(&a);
        assert_eq!(d.atoms(), &[(FRAC_PI_2, 0.5)]);
        assert!(b.sum(&a).le(&b.sum(&a)));
        assert!(!a.disjoint(&b));
    }
}
