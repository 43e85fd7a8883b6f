//! Upper bounds for the Siciak-Zahariuta extremal function by analytic discs.
//!
//! A bound `V_X(z) ≤ I(f̃)` comes from a closed analytic disc through `z`
//! whose boundary lies in `X`. This crate builds such discs from factored
//! boundary data ([`disc`]), evaluates the functionals `J`, `I` and `ν`
//! ([`functionals`]), glues discs along arcs of the circle ([`glue`]) and
//! searches disc families for the best bound ([`envelope`]). Lower bounds
//! come from [`oracle`], and [`hull`] uses both sides to test membership in
//! polynomial hulls.
//!
//! ```
//! use num_complex::Complex64;
//! use szlab::disc::SetGeometry;
//! use szlab::envelope::{envelope_ball, EnvelopeOptions};
//! use szlab::oracle::closed_form;
//!
//! let x = SetGeometry::ball(vec![Complex64::new(0.0, 0.0)], 1.0).unwrap();
//! let z = [Complex64::new(2.0, 0.0)];
//! let upper = envelope_ball(&x, &z, &EnvelopeOptions::default()).unwrap();
//! let exact = closed_form(&x, &z).unwrap();
//! assert!((upper.value - exact.value).abs() < 1e-3);
//! ```
//!
//! The guide in `book/` walks through each module with runnable examples.

pub mod boundary;
pub mod config;
pub mod disc;
pub mod envelope;
mod error;
pub mod functionals;
pub mod glue;
pub mod hull;
pub mod io;
pub mod optim;
pub mod oracle;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};

// Book chapters run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/discs.md")]
    mod discs {}
    #[doc = include_str!("../../../book/src/gluing.md")]
    mod gluing {}
    #[doc = include_str!("../../../book/src/envelopes.md")]
    mod envelopes {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/hull.md")]
    mod hull {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
}
