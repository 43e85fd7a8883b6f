use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::component::FactoredComponent;
use crate::boundary::{measure_meet, AtomicMeasure, BlaschkeData, OuterSpec};
use crate::{poly, Error, Result};

/// A Nevanlinna disc `f = (f_1, …, f_n)` in affine space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactoredDisc {
    components: Vec<FactoredComponent>,
}

impl FactoredDisc {
    pub fn new(components: Vec<FactoredComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Disc("a disc needs at least one component".into()));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[FactoredComponent] {
        &self.components
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        self.components.iter().map(|c| c.eval(z)).collect()
    }

    pub fn value_at_zero(&self) -> Vec<Complex64> {
        self.eval(Complex64::new(0.0, 0.0))
    }
}

/// A bounded holomorphic lifting `(f_0, …, f_n)` of a disc in projective
/// space; component 0 is the zeroth coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<FactoredComponent>", into = "Vec<FactoredComponent>")]
pub struct LiftedDisc {
    components: Vec<FactoredComponent>,
}

impl LiftedDisc {
    /// Every component must be bounded: empty singular denominator and an
    /// outer factor without poles on the closed disc.
    pub fn new(components: Vec<FactoredComponent>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::Disc("a lifting needs at least two components".into()));
        }
        for (j, c) in components.iter().enumerate() {
            if !c.sing_den().is_empty() {
                return Err(Error::Disc(format!("lifting component {j} has a singular denominator")));
            }
            if !c.outer().is_bounded() {
                return Err(Error::Disc(format!("lifting component {j} is unbounded")));
            }
        }
        if components.iter().all(|c| c.is_identically_zero()) {
            return Err(Error::Disc("all lifting components vanish".into()));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[FactoredComponent] {
        &self.components
    }

    pub fn zeroth(&self) -> &FactoredComponent {
        &self.components[0]
    }

    /// Affine dimension `n`.
    pub fn dimension(&self) -> usize {
        self.components.len() - 1
    }

    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        self.components.iter().map(|c| c.eval(z)).collect()
    }

    /// `π(f̃(z))`, or `None` on the hyperplane at infinity.
    pub fn affine_eval(&self, z: Complex64) -> Option<Vec<Complex64>> {
        project(&self.eval(z))
    }

    /// `f(0)`, which must be finite for the disc functionals.
    pub fn center(&self) -> Option<Vec<Complex64>> {
        self.affine_eval(Complex64::new(0.0, 0.0))
    }

    /// True by construction; kept as an explicit check.
    pub fn is_bounded(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.sing_den().is_empty() && c.outer().is_bounded())
    }

    fn nonzero(&self) -> impl Iterator<Item = &FactoredComponent> {
        self.components.iter().filter(|c| !c.is_identically_zero())
    }

    /// The common inner factor: gcd of the Blaschke data and meet of the
    /// singular numerators over all components that are not identically 0.
    pub fn common_inner(&self) -> (BlaschkeData, AtomicMeasure) {
        let bs: Vec<&BlaschkeData> = self.nonzero().map(|c| c.blaschke()).collect();
        let ms: Vec<AtomicMeasure> = self.nonzero().map(|c| c.sing_num().clone()).collect();
        (BlaschkeData::gcd(&bs), measure_meet(&ms))
    }

    /// Divide every component by the common inner factor.
    pub fn reduced(&self) -> Self {
        let (b, mu) = self.common_inner();
        let components = self
            .components
            .iter()
            .map(|c| {
                if c.is_identically_zero() {
                    c.clone()
                } else {
                    c.divide_inner(&b, &mu).expect("common factor divides every component")
                }
            })
            .collect();
        Self { components }
    }

    /// Multiply every component by the same inner function.
    pub fn times_inner(&self, b: &BlaschkeData, mu: &AtomicMeasure) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|c| {
                if c.is_identically_zero() {
                    Ok(c.clone())
                } else {
                    c.times_inner(b, mu)
                }
            })
            .collect::<Result<_>>()?;
        Self::new(components)
    }

    /// Multiply every component by the same constant.
    pub fn scaled(&self, k: Complex64) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|c| Ok(c.with_outer(c.outer().product(&OuterSpec::constant(k))?)))
            .collect::<Result<_>>()?;
        Self::new(components)
    }
}

pub(crate) fn project(v: &[Complex64]) -> Option<Vec<Complex64>> {
    let z0 = v[0];
    if z0.norm() == 0.0 {
        return None;
    }
    Some(v[1..].iter().map(|x| x / z0).collect())
}

impl TryFrom<Vec<FactoredComponent>> for LiftedDisc {
    type Error = Error;
    fn try_from(v: Vec<FactoredComponent>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<LiftedDisc> for Vec<FactoredComponent> {
    fn from(d: LiftedDisc) -> Self {
        d.components
    }
}

/// A closed analytic disc given by polynomial coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Complex64>>", into = "Vec<Vec<Complex64>>")]
pub struct ClosedPolyDisc {
    coords: Vec<Vec<Complex64>>,
}

impl ClosedPolyDisc {
    pub fn new(coords: Vec<Vec<Complex64>>) -> Result<Self> {
        if coords.is_empty() || coords.iter().any(|p| p.is_empty()) {
            return Err(Error::Disc("a polynomial disc needs nonempty coordinates".into()));
        }
        if coords.iter().flatten().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Disc("polynomial coefficients must be finite".into()));
        }
        Ok(Self {
            coords: coords.iter().map(|p| poly::trim(p)).collect(),
        })
    }

    pub fn constant(p: &[Complex64]) -> Self {
        Self {
            coords: p.iter().map(|&c| vec![c]).collect(),
        }
    }

    pub fn coords(&self) -> &[Vec<Complex64>] {
        &self.coords
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        self.coords.iter().map(|p| poly::eval(p, z)).collect()
    }

    pub fn value_at_zero(&self) -> Vec<Complex64> {
        self.coords.iter().map(|p| p[0]).collect()
    }

    /// The lifting `(1, h_1, …, h_n)`.
    pub fn lifted(&self) -> LiftedDisc {
        let mut components = vec![FactoredComponent::constant(Complex64::new(1.0, 0.0))];
        components.extend(self.coords.iter().map(|p| FactoredComponent::from_polynomial(p)));
        LiftedDisc { components }
    }
}

impl TryFrom<Vec<Vec<Complex64>>> for ClosedPolyDisc {
    type Error = Error;
    fn try_from(v: Vec<Vec<Complex64>>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ClosedPolyDisc> for Vec<Vec<Complex64>> {
    fn from(d: ClosedPolyDisc) -> Self {
        d.coords
    }
}

/// True iff every outer factor is bounded on the disc.
///
/// Inner factors are unimodular on the circle, so for factored data this is
/// what remains of "the quotients are bounded" once they are discarded.
pub fn check_bounded_quotient(d: &FactoredDisc) -> bool {
    d.components().iter().all(|c| c.outer().is_bounded())
}

/// Condition (ii) of the boundedness criterion for `J`: in the lifting whose
/// zeroth component is a Blaschke product, all other components are bounded.
///
/// That lifting is the reduced one divided by the singular and outer parts
/// of its zeroth component, so the test is whether those parts divide every
/// other component boundedly.
pub fn satisfies_condition_ii(d: &LiftedDisc) -> bool {
    let r = d.reduced();
    let zeroth = r.zeroth();
    if zeroth.is_identically_zero() {
        return false;
    }
    r.components()[1..]
        .iter()
        .filter(|c| !c.is_identically_zero())
        .all(|c| zeroth.sing_num().le(c.sing_num()) && outer_quotient_bounded(c.outer(), zeroth.outer()))
}

/// Whether `h/g` is bounded for outer `h`, `g`.
fn outer_quotient_bounded(h: &OuterSpec, g: &OuterSpec) -> bool {
    match (h, g) {
        (OuterSpec::Rational { num: hn, den: hd }, OuterSpec::Rational { num: gn, den: gd }) => {
            // h/g = hn·gd/(hd·gn); bounded iff each circle root of the
            // denominator is matched in the numerator.
            let top = poly::roots(&poly::mul(hn, gd));
            let bottom = poly::roots(&poly::mul(hd, gn));
            let mut used = vec![false; top.len()];
            bottom.iter().filter(|r| r.norm() <= 1.0 + 1e-9).all(|r| {
                match top
                    .iter()
                    .enumerate()
                    .find(|(i, t)| !used[*i] && (*t - r).norm() < 1e-7)
                {
                    Some((i, _)) => {
                        used[i] = true;
                        true
                    }
                    None => false,
                }
            })
        }
        // Grid data has bounded log-modulus, so a rational zero of g on the
        // circle is the only way to blow up.
        (_, OuterSpec::Rational { num, .. }) => poly::roots(num).iter().all(|r| r.norm() > 1.0 + 1e-9),
        (_, OuterSpec::Grid(_)) => true,
    }
}
