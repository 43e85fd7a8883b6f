use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boundary::{BlaschkeData, OuterSpec};
use crate::disc::{boundary_samples, FactoredComponent, LiftedDisc};
use crate::{Error, Result};

/// Circle samples used by [`g_class_check`].
pub const G_CLASS_SAMPLES: usize = 1 << 12;

/// Result of the G-class test `max_T‖f̃‖ < 2 min_T‖f̃‖`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GClassReport {
    /// `max ‖f̃‖ / min ‖f̃‖` over the circle samples.
    pub max_ratio: f64,
    pub passes: bool,
    /// For ball discs: whether `(1+(‖c‖+r)²)/(1+(‖c‖−r)²) < 4` holds, which
    /// forces `passes`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius_condition: Option<bool>,
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Ratio of the largest to the smallest lifting norm on the circle.
pub fn g_class_check(d: &LiftedDisc) -> GClassReport {
    let s = boundary_samples(d, G_CLASS_SAMPLES);
    let (lo, hi) = s
        .values
        .iter()
        .map(|v| norm(v))
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), x| (lo.min(x), hi.max(x)));
    let max_ratio = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    GClassReport {
        max_ratio,
        passes: max_ratio < 2.0,
        radius_condition: None,
    }
}

/// `(1+(‖c‖+r)²)/(1+(‖c‖−r)²)`, the bound on the squared norm ratio of a
/// ball disc lifting.
pub fn radius_condition_value(c: &[Complex64], r: f64) -> f64 {
    let nc = norm(c);
    (1.0 + (nc + r).powi(2)) / (1.0 + (nc - r).powi(2))
}

/// The ball disc through `z` with boundary on the sphere `‖w − c‖ = r`.
///
/// With `ρ = r/‖z − c‖` and `φ(w) = (ρ − w)/(1 − ρw)`, the lifting is
/// `(φ/ρ, (z − c) + cφ/ρ)`: its zeroth component has a single zero at `ρ`,
/// its value at 0 is `(1, z)`, and `J = log‖z − c‖ − log r`.
pub fn ball_disc(z: &[Complex64], c: &[Complex64], r: f64) -> Result<(LiftedDisc, GClassReport)> {
    if z.len() != c.len() || z.is_empty() {
        return Err(Error::Disc("point and center have different dimensions".into()));
    }
    let dist = norm(&z.iter().zip(c).map(|(a, b)| a - b).collect::<Vec<_>>());
    if !(r > 0.0 && r.is_finite()) || !(dist > r) {
        return Err(Error::Disc(format!(
            "ball disc needs the point outside the closed ball (distance {dist}, radius {r}); use a constant disc"
        )));
    }
    let rho = r / dist;
    let one = Complex64::new(1.0, 0.0);
    let mut comps = vec![FactoredComponent::bounded(
        BlaschkeData::new([(Complex64::new(rho, 0.0), 1)])?,
        OuterSpec::constant(Complex64::new(1.0 / rho, 0.0)),
    )];
    for (&zk, &ck) in z.iter().zip(c) {
        if ck == Complex64::new(0.0, 0.0) {
            comps.push(FactoredComponent::constant(zk));
            continue;
        }
        let num = [zk, -((zk - ck) * rho + ck / rho)];
        let f = FactoredComponent::from_polynomial(&num);
        let top = match f.outer() {
            OuterSpec::Rational { num, .. } => num.clone(),
            OuterSpec::Grid(_) => unreachable!("polynomial components are rational"),
        };
        let outer = OuterSpec::rational(top, vec![one, Complex64::new(-rho, 0.0)])?;
        comps.push(f.with_outer(outer));
    }
    let d = LiftedDisc::new(comps)?;
    let mut report = g_class_check(&d);
    report.radius_condition = Some(radius_condition_value(c, r) < 4.0);
    Ok((d, report))
}
