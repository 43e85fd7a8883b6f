use num_complex::Complex64;
use rayon::prelude::*;

use super::ball::best_ball;
use super::{check_point, constant_result, Certificate, EnvelopeOptions, EnvelopeResult, Family, Validity};
use crate::disc::{ClosedPolyDisc, SetGeometry};
use crate::glue::{cluster_partition, escalate, optimal_partition, plan_to_spec, AttachBall, GluingBound, GluingSpec};
use crate::optim::{gaussian, minimize, restart_rng, SimplexOptions};
use crate::{Error, Result};

/// Degree of the base disc `h(ζ) = z + Σ b_k ζ^k`.
const BASE_DEGREE: usize = 2;
const MAX_ARCS: usize = 8;
const START_M: u32 = 16;
const MAX_M: u32 = 1 << 10;
/// Base candidates turned into full specs.
const FINALISTS: usize = 3;

fn base_from(z: &[Complex64], v: &[f64]) -> ClosedPolyDisc {
    let n = z.len();
    let coords = (0..n)
        .map(|j| {
            let mut p = vec![z[j]];
            p.extend((0..BASE_DEGREE).map(|k| {
                let i = 2 * (k * n + j);
                Complex64::new(v[i], v[i + 1])
            }));
            p
        })
        .collect();
    ClosedPolyDisc::new(coords).expect("coordinates are nonempty")
}

/// Glued discs over a closed polynomial base through `z`.
///
/// Base discs are chosen by simplex search on the partition cost of
/// [`optimal_partition`], seeded by the constant disc, by discs heading
/// toward each ball of the shrunk set, and by seeded random restarts. The
/// best few bases are turned into gluing specs by both the optimal and the
/// clustering partition, `m` is escalated, and the smallest valid bound is
/// reported. The constant base reproduces the best ball disc, so the result
/// is never worse than the ball family up to the `e^{−m}` residue.
pub fn envelope_glued(
    x: &SetGeometry,
    z: &[Complex64],
    budget: usize,
    seed: u64,
    opts: &EnvelopeOptions,
) -> Result<EnvelopeResult> {
    check_point(x, z)?;
    if budget == 0 {
        return Err(Error::Config("budget must be at least 1".into()));
    }
    if let Some(r) = constant_result(x, z, Family::Glued, opts) {
        return Ok(r);
    }
    let y = opts.inner(x)?;
    let mut balls: Vec<AttachBall> = y
        .inscribed_balls()
        .into_iter()
        .map(|(center, radius)| AttachBall { center, radius })
        .collect();
    if let Some((center, radius)) = best_ball(&y, z) {
        balls.push(AttachBall { center, radius });
    }
    if balls.is_empty() {
        return Err(Error::Geometry("no ball fits inside the set".into()));
    }

    let n = z.len();
    let dim = 2 * n * BASE_DEGREE;
    let proxy = |v: &[f64]| optimal_partition(&base_from(z, v), &balls, MAX_ARCS, 64).cost;

    let mut seeds: Vec<Vec<f64>> = vec![vec![0.0; dim]];
    for b in &balls {
        for t in [0.3, 0.6, 0.9] {
            let mut v = vec![0.0; dim];
            for j in 0..n {
                let d = (b.center[j] - z[j]) * t;
                v[2 * j] = d.re;
                v[2 * j + 1] = d.im;
            }
            seeds.push(v);
        }
    }
    let scale = balls.iter().map(|b| b.radius).fold(0.0, f64::max);
    let mut idx = 0u64;
    while seeds.len() < budget.max(1) + 1 {
        let mut rng = restart_rng(seed, idx);
        seeds.push((0..dim).map(|_| scale * gaussian(&mut rng)).collect());
        idx += 1;
    }
    let nm = SimplexOptions {
        max_evals: 60 * dim,
        step: 0.2 * scale,
        xtol: 1e-6,
        ftol: 1e-7,
    };
    let mut found: Vec<(f64, Vec<f64>)> = seeds
        .par_iter()
        .map(|s| {
            let m = minimize(proxy, s, &nm);
            (m.f, m.x)
        })
        .collect();
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut finalists: Vec<Vec<f64>> = vec![vec![0.0; dim]];
    for (_, v) in &found {
        if finalists.len() > FINALISTS {
            break;
        }
        let far = finalists
            .iter()
            .all(|f| f.iter().zip(v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) > 1e-3);
        if far {
            finalists.push(v.clone());
        }
    }

    let candidates: Vec<(GluingSpec, GluingBound)> = finalists
        .par_iter()
        .flat_map_iter(|v| {
            let base = base_from(z, v);
            let plans = [
                optimal_partition(&base, &balls, MAX_ARCS, 128),
                cluster_partition(&base, &balls, MAX_ARCS, 512),
            ];
            plans
                .into_iter()
                .filter_map(|plan| {
                    let spec = plan_to_spec(&base, &plan, &balls, START_M).ok()?;
                    escalate(&spec, x, opts.grid, MAX_M).ok()
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let best = candidates
        .into_iter()
        .filter(|c| c.1.valid)
        .min_by(|a, b| a.1.bound.total_cmp(&b.1.bound));
    let Some((spec, bound)) = best else {
        return Err(Error::NoCertificate("no glued disc passed the boundary check".into()));
    };
    Ok(EnvelopeResult {
        value: bound.bound,
        family: Family::Glued,
        certificate: Certificate::Glued { spec },
        validity: Validity {
            grid: opts.grid,
            fraction_inside: bound.boundary_report.fraction_inside,
            budget: seeds.len(),
            m: Some(bound.m),
        },
    })
}
