//! Gluing closed discs along arcs of the circle.
//!
//! A base disc `h` is modified on each arc `A_j` by an attached lifted disc
//! `f̃_j` composed with an outer function `α_j` that has modulus 1 on `A_j`
//! and `e^{−m}` elsewhere. The boundary integral of `log|g̃_0|` of the
//! result bounds the extremal function at `h(0)` from above once the
//! boundary lands in the target set.

mod alpha;
mod ball;
mod partition;
mod spec;

pub use alpha::{alpha, alpha_boundary, alpha_moments};
pub use ball::{ball_disc, g_class_check, radius_condition_value, GClassReport, G_CLASS_SAMPLES};
pub use partition::{cluster_partition, optimal_partition, plan_to_spec, Attach, AttachBall, PartitionPlan};
pub use spec::{escalate, glue, gluing_upper_bound, GluedDisc, GluingBound, GluingSpec};
