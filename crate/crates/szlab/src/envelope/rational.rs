use num_complex::Complex64;
use rayon::prelude::*;

use super::ball::best_ball;
use super::{check_point, constant_result, Certificate, EnvelopeOptions, EnvelopeResult, Family, Validity};
use crate::boundary::TAU;
use crate::disc::{check_boundary_in, FactoredComponent, LiftedDisc, Point, SetGeometry};
use crate::functionals::j_of;
use crate::optim::{gaussian, minimize, restart_rng, SimplexOptions};
use crate::{poly, Error, Result};

/// Boundary samples used during the search; the final check uses the full
/// grid.
const SEARCH_SAMPLES: usize = 256;
/// Roots this close to the circle make `J` ill-conditioned.
const CIRCLE_GUARD: f64 = 1e-10;
const PENALTY: f64 = 1e3;

/// The lifting `(p_0, …, p_n)` as a lifted disc with factored components.
pub fn polynomial_lifting(polys: &[Vec<Complex64>]) -> Result<LiftedDisc> {
    LiftedDisc::new(polys.iter().map(|p| FactoredComponent::from_polynomial(p)).collect())
}

/// Coefficient layout: for each of the `n + 1` polynomials, the real and
/// imaginary parts of coefficients `1..=d`. The constant terms are fixed to
/// `(1, z)`.
struct Layout<'a> {
    z: &'a [Complex64],
    degree: usize,
}

impl Layout<'_> {
    fn polys(&self, v: &[f64]) -> Vec<Vec<Complex64>> {
        let d = self.degree;
        (0..=self.z.len())
            .map(|j| {
                let c0 = if j == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    self.z[j - 1]
                };
                let mut p = vec![c0];
                p.extend((0..d).map(|k| Complex64::new(v[2 * (j * d + k)], v[2 * (j * d + k) + 1])));
                p
            })
            .collect()
    }

    fn params(&self, polys: &[Vec<Complex64>]) -> Vec<f64> {
        let d = self.degree;
        let mut v = Vec::with_capacity(2 * d * polys.len());
        for p in polys {
            for k in 1..=d {
                let c = p.get(k).copied().unwrap_or_default();
                v.extend([c.re, c.im]);
            }
        }
        v
    }
}

struct Objective<'a> {
    x: &'a SetGeometry,
    layout: Layout<'a>,
    circle: Vec<Complex64>,
    target: f64,
}

impl Objective<'_> {
    /// `J` of the zeroth polynomial, or `None` when a root is on the circle.
    fn jensen(p0: &[Complex64]) -> Option<f64> {
        let mut j = 0.0;
        for r in poly::roots(p0) {
            let m = r.norm();
            if (m - 1.0).abs() <= CIRCLE_GUARD {
                return None;
            }
            if m < 1.0 {
                j -= m.ln();
            }
        }
        Some(j)
    }

    fn value(&self, v: &[f64]) -> f64 {
        if v.iter().any(|x| !x.is_finite()) {
            return f64::INFINITY;
        }
        let polys = self.layout.polys(v);
        let Some(j) = Self::jensen(&polys[0]) else {
            return f64::INFINITY;
        };
        let mut worst = f64::INFINITY;
        let mut pt: Point = vec![Complex64::default(); self.layout.z.len()];
        for &w in &self.circle {
            let p0 = poly::eval(&polys[0], w);
            if p0.norm() < 1e-300 {
                return f64::INFINITY;
            }
            for (k, p) in polys[1..].iter().enumerate() {
                pt[k] = poly::eval(p, w) / p0;
            }
            worst = worst.min(self.x.margin(&pt));
        }
        j + PENALTY * (self.target - worst).max(0.0)
    }
}

fn ball_seed(y: &SetGeometry, z: &[Complex64]) -> Option<Vec<Vec<Complex64>>> {
    let (c, r) = best_ball(y, z)?;
    let d = z.iter().zip(&c).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
    let rho = r / d;
    // The ball disc times (1 − ρζ).
    let mut polys = vec![vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0 / rho, 0.0)]];
    for (&zk, &ck) in z.iter().zip(&c) {
        polys.push(vec![zk, -((zk - ck) * rho + ck / rho)]);
    }
    Some(polys)
}

/// Closed polynomial liftings `(p_0, …, p_n)` with `p_0(0) = 1`,
/// `p_k(0) = z_k` and degree at most `degree`.
///
/// The search minimizes `J` plus a penalty on the worst boundary margin over
/// a coarse circle; candidates are then checked exactly at `opts.grid` in
/// order of objective and the first one whose boundary lies in `x` is
/// reported. Seeds are the best ball disc (degree 1 after clearing its
/// denominator), affine discs `z + ζ(q − z)` toward sample points `q` of the
/// shrunk set, and seeded random perturbations of the best seeds.
pub fn envelope_rational(
    x: &SetGeometry,
    z: &[Complex64],
    degree: usize,
    budget: usize,
    seed: u64,
    opts: &EnvelopeOptions,
) -> Result<EnvelopeResult> {
    check_point(x, z)?;
    if degree == 0 || budget == 0 {
        return Err(Error::Config("degree and budget must be at least 1".into()));
    }
    if let Some(r) = constant_result(x, z, Family::Rational, opts) {
        return Ok(r);
    }
    let y = opts.inner(x)?;
    let delta = opts.delta(x);
    let layout = Layout { z, degree };
    let obj = Objective {
        x,
        layout: Layout { z, degree },
        circle: (0..SEARCH_SAMPLES)
            .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / SEARCH_SAMPLES as f64))
            .collect(),
        target: 0.5 * delta,
    };

    let mut seeds: Vec<Vec<f64>> = Vec::new();
    if let Some(p) = ball_seed(&y, z) {
        seeds.push(layout.params(&p));
    }
    let mut reps: Vec<Point> = y.inscribed_balls().into_iter().map(|b| b.0).collect();
    reps.extend(y.surface_samples(16));
    for q in reps {
        let mut polys = vec![vec![Complex64::new(1.0, 0.0)]];
        polys.extend(z.iter().zip(&q).map(|(&a, &b)| vec![a, b - a]));
        seeds.push(layout.params(&polys));
    }
    let mut scored: Vec<(f64, usize)> = seeds.iter().enumerate().map(|(i, s)| (obj.value(s), i)).collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    // Starts: the best seeds, then perturbations of the best three.
    let mut starts: Vec<Vec<f64>> = scored.iter().take(budget.min(4)).map(|s| seeds[s.1].clone()).collect();
    let parents: Vec<&Vec<f64>> = scored.iter().take(3).map(|s| &seeds[s.1]).collect();
    let mut idx = 0u64;
    while starts.len() < budget && !parents.is_empty() {
        let mut rng = restart_rng(seed, idx);
        let parent = parents[idx as usize % parents.len()];
        let scale = 0.3 / (1.0 + (idx / parents.len() as u64) as f64).sqrt();
        starts.push(
            parent
                .iter()
                .map(|&p| p + scale * (1.0 + p.abs()) * gaussian(&mut rng))
                .collect(),
        );
        idx += 1;
    }

    let dim = seeds.first().map_or(0, Vec::len);
    let nm = SimplexOptions {
        max_evals: 300 * dim.max(1),
        step: 0.1,
        ..Default::default()
    };
    let results: Vec<(f64, Vec<f64>)> = starts
        .par_iter()
        .map(|s| {
            let m = minimize(|v| obj.value(v), s, &nm);
            (m.f, m.x)
        })
        .collect();

    let mut pool: Vec<(f64, Vec<f64>)> = results;
    pool.extend(scored.iter().map(|&(f, i)| (f, seeds[i].clone())));
    pool.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (_, v) in pool.iter().filter(|p| p.0.is_finite()).take(12) {
        let polys = layout.polys(v);
        if Objective::jensen(&polys[0]).is_none() {
            continue;
        }
        let Ok(disc) = polynomial_lifting(&polys) else { continue };
        let rep = check_boundary_in(&disc, x, opts.grid);
        if !rep.all_inside() {
            continue;
        }
        return Ok(EnvelopeResult {
            value: j_of(&disc)?.value,
            family: Family::Rational,
            certificate: Certificate::Disc { disc },
            validity: Validity {
                grid: opts.grid,
                fraction_inside: rep.fraction_inside,
                budget: starts.len(),
                m: None,
            },
        });
    }
    Err(Error::NoCertificate(format!(
        "no polynomial disc of degree {degree} passed the boundary check within {budget} restarts"
    )))
}
