//! Polynomial-hull membership.
//!
//! A point `a` is in the hull of `K` exactly when the extremal function of
//! every open neighbourhood of `K` vanishes at `a`. We test a finite
//! schedule of neighbourhoods `U_δ` with the envelope searches (evidence for
//! membership) and, independently, search for a polynomial that is larger at
//! `a` than on `K` (proof of exclusion, up to the sampling of `K`).

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundary::measure_join;
use crate::disc::{Point, SetGeometry};
use crate::envelope::{envelope_ball, envelope_rational, Certificate, EnvelopeOptions, EnvelopeResult, Family};
use crate::oracle::{poly_lower, LinearForms};

/// Separation needs `|p(a)| > (1 + SEPARATION)·max_K|p|`.
pub const SEPARATION: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HullStatus {
    InHullEvidence,
    NotInHull,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum HullCertificate {
    /// A disc centered at `a` with boundary in `U_δ`.
    Disc {
        delta: f64,
        value: f64,
        nu: f64,
        family: Family,
        certificate: Certificate,
    },
    /// `margin = log(|p(a)| / max_K|p|)`.
    Polynomial {
        degree: usize,
        margin: f64,
        polynomial: LinearForms,
    },
}

/// What one neighbourhood produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    /// Absolute neighbourhood radius.
    pub delta: f64,
    pub eps: f64,
    /// Best envelope value, if any family produced a certificate.
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullVerdict {
    pub status: HullStatus,
    pub certificates: Vec<HullCertificate>,
    pub schedule: Vec<LevelRecord>,
    /// Best `(1/d) log(|p(a)|/max_K|p|)` over the degrees searched.
    pub best_polynomial_margin: f64,
    /// Both kinds of certificate were found; never expected.
    pub contradiction: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullOptions {
    pub eps: f64,
    /// Neighbourhood radii as fractions of the diameter of `K`, decreasing.
    pub schedule: Vec<f64>,
    pub envelope: EnvelopeOptions,
    /// Restarts for the rational envelope and for each polynomial degree.
    pub budget: usize,
    pub seed: u64,
    pub max_degree: usize,
    /// Sample points per primitive of `K`.
    pub samples: usize,
    /// Past this wall-clock time the verdict is inconclusive.
    pub time_limit: Duration,
}

impl Default for HullOptions {
    fn default() -> Self {
        Self {
            eps: 0.05,
            schedule: vec![0.1, 0.05, 0.02, 0.01],
            envelope: EnvelopeOptions::default(),
            budget: 12,
            seed: 0,
            max_degree: 4,
            samples: 256,
            time_limit: Duration::from_secs(600),
        }
    }
}

fn nu_of_certificate(c: &Certificate) -> f64 {
    match c {
        Certificate::Disc { disc } => measure_join(
            &disc
                .components()
                .iter()
                .map(|c| c.sing_den().clone())
                .collect::<Vec<_>>(),
        )
        .total(),
        // Constant and glued discs are closed.
        Certificate::Constant { .. } | Certificate::Glued { .. } => 0.0,
    }
}

fn best_envelope(u: &SetGeometry, a: &[Complex64], opts: &HullOptions) -> crate::Result<EnvelopeResult> {
    let ball = envelope_ball(u, a, &opts.envelope);
    let rational = envelope_rational(u, a, 2, opts.budget, opts.seed, &opts.envelope);
    match (ball, rational) {
        (Ok(b), Ok(r)) => Ok(if r.value < b.value { r } else { b }),
        (Ok(b), Err(_)) => Ok(b),
        (Err(_), Ok(r)) => Ok(r),
        (Err(e), Err(_)) => Err(e),
    }
}

/// Hull membership evidence for `a` relative to the compact set `k`.
///
/// Never errors: invalid input, failed searches and timeouts all give an
/// inconclusive verdict whose records say what happened.
pub fn hull_test(k: &SetGeometry, a: &[Complex64], opts: &HullOptions) -> HullVerdict {
    let start = Instant::now();
    let diam = k.diameter();
    let schedule_ok = !opts.schedule.is_empty()
        && opts.schedule.iter().all(|&d| d > 0.0)
        && opts.schedule.windows(2).all(|w| w[0] > w[1]);
    let mut verdict = HullVerdict {
        status: HullStatus::Inconclusive,
        certificates: Vec::new(),
        schedule: Vec::new(),
        best_polynomial_margin: f64::NEG_INFINITY,
        contradiction: false,
    };
    if !schedule_ok || !(opts.eps > 0.0) || a.len() != k.dimension() || !diam.is_finite() {
        verdict.schedule = opts
            .schedule
            .iter()
            .map(|&d| LevelRecord {
                delta: d * diam,
                eps: opts.eps,
                value: None,
                error: Some("invalid hull input".into()),
            })
            .collect();
        return verdict;
    }

    let (levels, poly) = rayon::join(
        || {
            opts.schedule
                .par_iter()
                .map(|&frac| {
                    let delta = frac * diam.max(f64::MIN_POSITIVE);
                    let r = k.neighbourhood(delta).and_then(|u| best_envelope(&u, a, opts));
                    (delta, r)
                })
                .collect::<Vec<_>>()
        },
        || {
            let samples: Vec<Point> = k.surface_samples(opts.samples);
            (1..=opts.max_degree)
                .into_par_iter()
                .filter_map(|d| poly_lower(&samples, a, d, opts.budget, opts.seed).ok().map(|v| (d, v)))
                .collect::<Vec<_>>()
        },
    );

    let mut all_small = true;
    let mut discs = Vec::new();
    for (delta, r) in levels {
        match r {
            Ok(e) => {
                let centered = e
                    .certificate
                    .center()
                    .is_some_and(|c| c.iter().zip(a).all(|(x, y)| (x - y).norm() <= 1e-9));
                let valid = centered && e.validity.fraction_inside == 1.0;
                all_small &= valid && e.value < opts.eps;
                verdict.schedule.push(LevelRecord {
                    delta,
                    eps: opts.eps,
                    value: Some(e.value),
                    error: (!valid).then(|| "certificate failed validation".into()),
                });
                if valid && e.value < opts.eps {
                    discs.push(HullCertificate::Disc {
                        delta,
                        value: e.value,
                        nu: nu_of_certificate(&e.certificate),
                        family: e.family,
                        certificate: e.certificate,
                    });
                }
            }
            Err(err) => {
                all_small = false;
                verdict.schedule.push(LevelRecord {
                    delta,
                    eps: opts.eps,
                    value: None,
                    error: Some(err.to_string()),
                });
            }
        }
    }

    let threshold = SEPARATION.ln_1p();
    let mut separating = None;
    for (d, v) in poly {
        verdict.best_polynomial_margin = verdict.best_polynomial_margin.max(v.value);
        let margin = v.value * d as f64;
        if margin > threshold && separating.is_none() {
            if let Some(p) = v.polynomial {
                separating = Some(HullCertificate::Polynomial {
                    degree: d,
                    margin,
                    polynomial: p,
                });
            }
        }
    }

    let timed_out = start.elapsed() > opts.time_limit;
    verdict.contradiction = all_small && separating.is_some();
    verdict.status = if timed_out || verdict.contradiction {
        HullStatus::Inconclusive
    } else if let Some(p) = &separating {
        verdict.certificates.push(p.clone());
        HullStatus::NotInHull
    } else if all_small {
        HullStatus::InHullEvidence
    } else {
        HullStatus::Inconclusive
    };
    if verdict.status != HullStatus::NotInHull {
        verdict.certificates.extend(discs);
        verdict.certificates.extend(separating);
    }
    verdict
}
