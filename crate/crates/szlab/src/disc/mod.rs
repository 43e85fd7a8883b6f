//! Analytic discs in factored Nevanlinna form, their liftings, boundary
//! sampling, and the target sets they must land in.

mod component;
mod discs;
mod geometry;
mod lift;
mod sampling;

pub use component::FactoredComponent;
pub use discs::{check_bounded_quotient, satisfies_condition_ii, ClosedPolyDisc, FactoredDisc, LiftedDisc};
pub use geometry::{Point, Primitive, SetGeometry};
pub use lift::lift;
pub use sampling::{
    boundary_samples, check_boundary_in, AffineBoundary, AffinePoint, BoundarySamples, ComponentDisc, MembershipReport,
};
pub(crate) use sampling::{project_point, report_for};
