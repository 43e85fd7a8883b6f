//! The disc functionals `J`, `I` and `ν`.
//!
//! `J` and `I` are read off the factored data of a lifting after removing
//! the inner factor common to all components; `ν` is the mass of the join of
//! the singular denominators. A quadrature path for `I` integrates the
//! boundary log-modulus of the reduced zeroth component and serves as an
//! independent check.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boundary::{measure_join, BoundaryGrid};
use crate::disc::{FactoredComponent, FactoredDisc, LiftedDisc};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Quadrature,
}

/// Where a functional value comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    /// `−log|B̃(0)|` of the reduced zeroth Blaschke product.
    pub blaschke: f64,
    /// Mass of the reduced zeroth singular numerator (or of `ν`).
    pub singular: f64,
    /// Zeros (with multiplicity) removed as common to all components.
    pub removed_zeros: u32,
    /// Singular mass removed as common to all components.
    pub removed_singular_mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalValue {
    /// Nonnegative; `+∞` when flagged infinite.
    pub value: f64,
    pub method: Method,
    pub infinite: bool,
    pub detail: Decomposition,
}

impl FunctionalValue {
    fn infinite(method: Method) -> Self {
        Self {
            value: f64::INFINITY,
            method,
            infinite: true,
            detail: Decomposition {
                blaschke: f64::INFINITY,
                singular: 0.0,
                removed_zeros: 0,
                removed_singular_mass: 0.0,
            },
        }
    }
}

/// The reduced lifting, or `None` when the zeroth component vanishes
/// identically. Errors when `f(0)` is not in affine space.
fn reduce(d: &LiftedDisc) -> Result<Option<(LiftedDisc, Decomposition)>> {
    if d.zeroth().is_identically_zero() {
        return Ok(None);
    }
    let (b, mu) = d.common_inner();
    let r = d.reduced();
    let z0 = r.zeroth();
    let log_b0 = z0.blaschke().log_abs_at_zero();
    if !log_b0.is_finite() || z0.outer().value_at_zero().norm() == 0.0 {
        return Err(Error::Disc(
            "the zeroth component vanishes at 0, so f(0) is not finite".into(),
        ));
    }
    let detail = Decomposition {
        blaschke: -log_b0,
        singular: z0.sing_num().total(),
        removed_zeros: b.degree(),
        removed_singular_mass: mu.total(),
    };
    Ok(Some((r, detail)))
}

/// `J(f) = −log|B(0)|` for the zeros of the reduced zeroth component.
pub fn j_of(d: &LiftedDisc) -> Result<FunctionalValue> {
    let Some((_, detail)) = reduce(d)? else {
        return Ok(FunctionalValue::infinite(Method::Exact));
    };
    Ok(FunctionalValue {
        value: detail.blaschke,
        method: Method::Exact,
        infinite: false,
        detail: Decomposition {
            singular: 0.0,
            ..detail
        },
    })
}

/// `I(f) = −log|(B̃s̃)(0)|` for the reduced zeroth component, computed
/// exactly from the lattice reduction.
pub fn i_of(d: &LiftedDisc) -> Result<FunctionalValue> {
    let Some((_, detail)) = reduce(d)? else {
        return Ok(FunctionalValue::infinite(Method::Exact));
    };
    Ok(FunctionalValue {
        value: detail.blaschke + detail.singular,
        method: Method::Exact,
        infinite: false,
        detail,
    })
}

/// `I(f)` as the boundary mean of `log|f̃₀*|` minus `log|f̃₀(0)|` for the
/// reduced lifting, using `size` boundary samples.
///
/// Singular inner factors have unimodular radial limits off their atoms, so
/// the boundary trace drops them and every node contributes; their mass
/// enters only through `f̃₀(0)`.
pub fn i_quadrature(d: &LiftedDisc, size: usize) -> Result<FunctionalValue> {
    let Some((r, detail)) = reduce(d)? else {
        return Ok(FunctionalValue::infinite(Method::Quadrature));
    };
    let z0 = r.zeroth();
    let trace = FactoredComponent::bounded(z0.blaschke().clone(), z0.outer().clone());
    let logs: Vec<f64> = trace
        .boundary_values(size)
        .into_iter()
        .flatten()
        .map(|v| v.norm().ln())
        .collect();
    if logs.len() != size {
        return Err(Error::Disc(
            "boundary trace of the zeroth component is undefined".into(),
        ));
    }
    let value = logs.iter().sum::<f64>() / size as f64 - z0.value_at_zero().norm().ln();
    Ok(FunctionalValue {
        value,
        method: Method::Quadrature,
        infinite: false,
        detail,
    })
}

/// `ν(f)`: total mass of the join of the singular denominators.
pub fn nu_of(f: &FactoredDisc) -> FunctionalValue {
    let t = measure_join(&f.components().iter().map(|c| c.sing_den().clone()).collect::<Vec<_>>());
    FunctionalValue {
        value: t.total(),
        method: Method::Exact,
        infinite: false,
        detail: Decomposition {
            blaschke: 0.0,
            singular: t.total(),
            removed_zeros: 0,
            removed_singular_mass: 0.0,
        },
    }
}

/// Circle means of `log|B̃|` on `|z| = r` minus `log|B̃(0)|`, one per radius,
/// for the Blaschke part of the reduced zeroth component.
pub fn j_via_riesz(d: &LiftedDisc, radii: &[f64], size: usize) -> Result<Vec<f64>> {
    if radii.windows(2).any(|w| !(w[0] < w[1])) || radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
        return Err(Error::Disc("radii must increase inside (0, 1)".into()));
    }
    let Some((r, _)) = reduce(d)? else {
        return Ok(vec![f64::INFINITY; radii.len()]);
    };
    let b = r.zeroth().blaschke().clone();
    let log0 = b.log_abs_at_zero();
    Ok(radii
        .iter()
        .map(|&rad| {
            let mean = (0..size)
                .map(|k| {
                    b.eval(Complex64::from_polar(rad, BoundaryGrid::<f64>::angle_of(size, k)))
                        .norm()
                        .ln()
                })
                .sum::<f64>()
                / size as f64;
            mean - log0
        })
        .collect())
}

/// Argument-principle count of zeros of a lifting component inside
/// `|z| < r`, from the winding of its values on that circle.
pub fn zero_count(d: &LiftedDisc, component: usize, r: f64, size: usize) -> Result<i64> {
    let c = d
        .components()
        .get(component)
        .ok_or_else(|| Error::Disc(format!("no component {component}")))?;
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Disc("radius must lie in (0, 1)".into()));
    }
    let vals: Vec<Complex64> = (0..=size)
        .map(|k| c.eval(Complex64::from_polar(r, BoundaryGrid::<f64>::angle_of(size, k % size))))
        .collect();
    if vals.iter().any(|v| v.norm() == 0.0) {
        return Err(Error::Disc("component vanishes on the counting circle".into()));
    }
    let winding: f64 = vals.windows(2).map(|w| (w[1] / w[0]).arg()).sum();
    Ok((winding / crate::boundary::TAU).round() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{AtomicMeasure, BlaschkeData, OuterSpec};
    use crate::disc::FactoredComponent;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn counterexample(a: f64) -> LiftedDisc {
        LiftedDisc::new(vec![
            FactoredComponent::new(
                BlaschkeData::new([(c(a, 0.0), 1)]).unwrap(),
                OuterSpec::one(),
                AtomicMeasure::atom(0.0, 1.0).unwrap(),
                AtomicMeasure::empty(),
            )
            .unwrap(),
            FactoredComponent::constant(c(1.0, 0.0)),
        ])
        .unwrap()
    }

    #[test]
    fn counterexample_values() {
        let d = counterexample(0.5);
        assert!((j_of(&d).unwrap().value - 2f64.ln()).abs() < 1e-15);
        let i = i_of(&d).unwrap();
        assert!((i.value - (1.0 + 2f64.ln())).abs() < 1e-15);
        assert!((i.detail.blaschke + i.detail.singular - i.value).abs() < 1e-15);
    }

    #[test]
    fn common_singular_factor_is_removed() {
        let s = AtomicMeasure::atom(0.0, 1.0).unwrap();
        let d = LiftedDisc::new(vec![
            FactoredComponent::new(
                BlaschkeData::empty(),
                OuterSpec::one(),
                s.clone(),
                AtomicMeasure::empty(),
            )
            .unwrap(),
            FactoredComponent::new(
                BlaschkeData::new([(c(0.0, 0.0), 1)]).unwrap(),
                OuterSpec::one(),
                s,
                AtomicMeasure::empty(),
            )
            .unwrap(),
        ])
        .unwrap();
        let i = i_of(&d).unwrap();
        assert_eq!(i.value, 0.0);
        assert_eq!(i.detail.removed_singular_mass, 1.0);
    }

    #[test]
    fn identically_zero_zeroth_is_infinite() {
        let d = LiftedDisc::new(vec![
            FactoredComponent::zero(),
            FactoredComponent::constant(c(1.0, 0.0)),
        ])
        .unwrap();
        assert!(j_of(&d).unwrap().infinite);
        assert!(i_of(&d).unwrap().value.is_infinite());
    }

    #[test]
    fn zero_free_zeroth_has_zero_j() {
        let d = LiftedDisc::new(vec![
            FactoredComponent::constant(c(2.0, 0.0)),
            FactoredComponent::constant(c(1.0, 0.0)),
        ])
        .unwrap();
        assert_eq!(j_of(&d).unwrap().value, 0.0);
        assert_eq!(j_via_riesz(&d, &[0.5, 0.9], 64).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn argument_principle_counts_zeros() {
        let d = counterexample(0.5);
        assert_eq!(zero_count(&d, 0, 0.4, 256).unwrap(), 0);
        assert_eq!(zero_count(&d, 0, 0.6, 256).unwrap(), 1);
    }

    #[test]
    fn nu_is_the_join_mass() {
        let t1 = AtomicMeasure::atom(0.0, 0.3).unwrap();
        let t2 = AtomicMeasure::new([(0.0, 0.2), (std::f64::consts::FRAC_PI_2, 0.5)]).unwrap();
        let f = FactoredDisc::new(vec![
            FactoredComponent::new(BlaschkeData::empty(), OuterSpec::one(), AtomicMeasure::empty(), t1).unwrap(),
            FactoredComponent::new(BlaschkeData::empty(), OuterSpec::one(), AtomicMeasure::empty(), t2).unwrap(),
        ])
        .unwrap();
        assert!((nu_of(&f).value - 0.8).abs() < 1e-15);
    }
}
