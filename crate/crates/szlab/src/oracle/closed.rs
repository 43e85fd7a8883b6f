use num_complex::Complex64;

use super::{OracleMethod, OracleValue};
use crate::disc::{Primitive, SetGeometry};
use crate::{Error, Result};

/// `log⁺(‖z − c‖/r)` for a single ball `B(c, r)`.
pub fn closed_form(x: &SetGeometry, z: &[Complex64]) -> Result<OracleValue> {
    let [Primitive::Ball { center, radius }] = x.primitives() else {
        return Err(Error::Unsupported(
            "the closed form needs a set that is a single ball".into(),
        ));
    };
    if z.len() != center.len() {
        return Err(Error::Config("point and ball have different dimensions".into()));
    }
    let d = z
        .iter()
        .zip(center)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(OracleValue {
        value: (d / radius).ln().max(0.0),
        method: OracleMethod::ClosedForm,
        error_estimate: 0.0,
        polynomial: None,
    })
}
