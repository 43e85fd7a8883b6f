//! Reference values for the extremal function, independent of discs.
//!
//! `closed_form` covers single balls, `pde_green` solves for the Green
//! function of a planar complement with pole at infinity, and `poly_lower`
//! searches polynomials for lower bounds.

mod closed;
mod pde;
mod poly_lower;

use serde::{Deserialize, Serialize};

pub use closed::closed_form;
pub use pde::{green_solution, pde_green, GreenSolution};
pub use poly_lower::{poly_lower, LinearForm, LinearForms};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMethod {
    ClosedForm,
    Pde,
    PolyLower,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleValue {
    /// May be `±∞` for `poly_lower` (see there).
    pub value: f64,
    pub method: OracleMethod,
    pub error_estimate: f64,
    /// The polynomial behind a `poly_lower` value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<LinearForms>,
}
