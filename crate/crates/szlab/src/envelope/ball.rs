use num_complex::Complex64;

use super::{check_point, constant_result, Certificate, EnvelopeOptions, EnvelopeResult, Family, Validity};
use crate::disc::{check_boundary_in, Point, SetGeometry};
use crate::functionals::j_of;
use crate::glue::ball_disc;
use crate::optim::{minimize, SimplexOptions};
use crate::Result;

fn dist(p: &[Complex64], q: &[Complex64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
}

fn to_reals(p: &[Complex64]) -> Vec<f64> {
    p.iter().flat_map(|c| [c.re, c.im]).collect()
}

fn to_point(x: &[f64]) -> Point {
    x.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect()
}

/// The ball `B(c, r) ⊆ y` minimizing `log‖z − c‖ − log r`.
///
/// Starts from the inscribed ball of every primitive and moves the center
/// by simplex search, taking the largest radius that fits in `y` at each
/// center.
pub fn best_ball(y: &SetGeometry, z: &[Complex64]) -> Option<(Point, f64)> {
    let objective = |c: &Point| -> f64 {
        let r = -y.signed_distance(c);
        let d = dist(z, c);
        if r <= 0.0 || d <= r {
            f64::INFINITY
        } else {
            d.ln() - r.ln()
        }
    };
    let mut best: Option<(Point, f64, f64)> = None;
    for (c0, r0) in y.inscribed_balls() {
        let mut cands = vec![(c0.clone(), r0)];
        let opts = SimplexOptions {
            max_evals: 600,
            step: 0.25 * r0,
            xtol: 1e-12 * (1.0 + r0),
            ..Default::default()
        };
        let m = minimize(|v| objective(&to_point(v)), &to_reals(&c0), &opts);
        let c1 = to_point(&m.x);
        let r1 = -y.signed_distance(&c1);
        if r1 > 0.0 {
            cands.push((c1, r1));
        }
        for (c, r) in cands {
            let d = dist(z, &c);
            if !(d > r) {
                continue;
            }
            let v = d.ln() - r.ln();
            if best.as_ref().is_none_or(|b| v < b.2) {
                best = Some((c, r, v));
            }
        }
    }
    best.map(|(c, r, _)| (c, r))
}

/// Ball discs into `Y ⊂ X`, or the constant disc when `z ∈ X`.
pub fn envelope_ball(x: &SetGeometry, z: &[Complex64], opts: &EnvelopeOptions) -> Result<EnvelopeResult> {
    check_point(x, z)?;
    if let Some(r) = constant_result(x, z, Family::Ball, opts) {
        return Ok(r);
    }
    let y = opts.inner(x)?;
    let (c, r) = best_ball(&y, z).ok_or_else(|| crate::Error::Geometry("no ball fits inside the set".into()))?;
    let (disc, _) = ball_disc(z, &c, r)?;
    let rep = check_boundary_in(&disc, x, opts.grid);
    Ok(EnvelopeResult {
        value: j_of(&disc)?.value,
        family: Family::Ball,
        certificate: Certificate::Disc { disc },
        validity: Validity {
            grid: opts.grid,
            fraction_inside: rep.fraction_inside,
            budget: 0,
            m: None,
        },
    })
}
