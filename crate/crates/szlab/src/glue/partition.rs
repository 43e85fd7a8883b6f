//! Choosing arcs and attached discs for a base disc.
//!
//! With ball discs attached, the boundary of the glued disc on `A_j` sits
//! near `c + ρ_j (h(ζ) − c)/φ_j(α_j*)`, so taking `ρ_j = r/M_j` with
//! `M_j = max_{A_j} ‖h − c‖` keeps it inside the ball of radius `r`. That
//! arc then contributes `a_j log(M_j/r)` to the bound, or nothing when the
//! base already stays inside the ball there and a constant disc is attached.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ball::ball_disc;
use super::spec::GluingSpec;
use crate::boundary::{fft, unit, Arc, TAU};
use crate::disc::{ClosedPolyDisc, FactoredComponent, LiftedDisc, Point};
use crate::Result;

/// A ball available to attached discs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttachBall {
    pub center: Point,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Attach {
    Constant(usize),
    Ball(usize),
}

impl Attach {
    pub fn ball_index(&self) -> usize {
        match *self {
            Self::Constant(b) | Self::Ball(b) => b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionPlan {
    pub arcs: Vec<Arc>,
    pub anchors: Vec<f64>,
    pub attach: Vec<Attach>,
    /// `Σ a_j log⁺(M_j/r_j)` on the planning samples.
    pub cost: f64,
}

fn dist(p: &[Complex64], q: &[Complex64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
}

/// Base boundary values at `size` uniform angles (a power of two).
fn trace(base: &ClosedPolyDisc, size: usize) -> Vec<Point> {
    let cols: Vec<Vec<Complex64>> = base.coords().iter().map(|p| fft::eval_on_circle(p, size)).collect();
    (0..size).map(|k| cols.iter().map(|c| c[k]).collect()).collect()
}

fn arc_cost(fraction: f64, max_dist: f64, radius: f64) -> f64 {
    if max_dist < radius {
        0.0
    } else {
        fraction * (max_dist / radius).ln()
    }
}

fn best_attach(fraction: f64, maxes: impl Iterator<Item = (usize, f64, f64)>) -> (Attach, f64) {
    let mut best = (Attach::Constant(0), f64::INFINITY);
    for (b, m, r) in maxes {
        let c = arc_cost(fraction, m, r);
        if c < best.1 {
            best = (if m < r { Attach::Constant(b) } else { Attach::Ball(b) }, c);
        }
    }
    best
}

/// Cells `i..j` of a rotated partition and what is attached to them.
type Segment = (usize, usize, Attach);

/// The cheapest partition into between 2 and `k_max` arcs whose endpoints
/// lie on a grid of `cells` cells, found by dynamic programming over a few
/// rotations of the grid.
pub fn optimal_partition(base: &ClosedPolyDisc, balls: &[AttachBall], k_max: usize, cells: usize) -> PartitionPlan {
    let per_cell = 8;
    let size = (cells * per_cell).next_power_of_two();
    let cells = size / per_cell;
    let k_max = k_max.max(2);
    let pts = trace(base, size);
    let cell_max: Vec<Vec<f64>> = balls
        .iter()
        .map(|b| {
            (0..cells)
                .map(|i| {
                    pts[i * per_cell..(i + 1) * per_cell]
                        .iter()
                        .map(|p| dist(p, &b.center))
                        .fold(0.0, f64::max)
                })
                .collect()
        })
        .collect();

    let rotations = 8.min(cells);
    let mut best: Option<(f64, usize, Vec<Segment>)> = None;
    for rot in 0..rotations {
        let off = rot * cells / rotations;
        // seg[i][j]: cheapest attachment for cells i..j (rotated).
        let mut seg = vec![vec![(Attach::Constant(0), f64::INFINITY); cells + 1]; cells + 1];
        for i in 0..cells {
            let mut m = vec![0.0f64; balls.len()];
            for j in i + 1..=cells {
                for (b, mb) in m.iter_mut().enumerate() {
                    *mb = mb.max(cell_max[b][(off + j - 1) % cells]);
                }
                let frac = (j - i) as f64 / cells as f64;
                seg[i][j] = best_attach(frac, m.iter().enumerate().map(|(b, &mb)| (b, mb, balls[b].radius)));
            }
        }
        let inf = f64::INFINITY;
        let mut dp = vec![vec![inf; cells + 1]; k_max + 1];
        let mut back = vec![vec![0usize; cells + 1]; k_max + 1];
        dp[0][0] = 0.0;
        for k in 1..=k_max {
            for j in 1..=cells {
                for i in 0..j {
                    let v = dp[k - 1][i] + seg[i][j].1;
                    if v < dp[k][j] {
                        dp[k][j] = v;
                        back[k][j] = i;
                    }
                }
            }
        }
        for k in 2..=k_max {
            let v = dp[k][cells];
            if best.as_ref().is_none_or(|b| v < b.0 - 1e-15) {
                let mut segs = Vec::with_capacity(k);
                let mut j = cells;
                for kk in (1..=k).rev() {
                    let i = back[kk][j];
                    segs.push((i, j, seg[i][j].0));
                    j = i;
                }
                segs.reverse();
                best = Some((v, off, segs));
            }
        }
    }
    let (cost, off, segs) = best.expect("at least one partition");
    // Arc endpoints sit halfway between samples.
    let step = TAU / size as f64;
    let angle = |cell: usize| (off + cell) as f64 * per_cell as f64 * step - 0.5 * step;
    let arcs: Vec<Arc> = segs
        .iter()
        .map(|&(i, j, _)| Arc::new(angle(i), angle(j)).expect("nonempty segment"))
        .collect();
    PartitionPlan {
        anchors: arcs.iter().map(|a| a.midpoint()).collect(),
        arcs,
        attach: segs.iter().map(|s| s.2).collect(),
        cost,
    }
}

/// Partition by nearest ball along the base trace.
///
/// Runs of samples with the same nearest ball become arcs, split at the
/// midpoint between differing neighbours. Short runs are merged until at
/// most `k_max` remain, then the longest arcs are halved up to `k_max`.
pub fn cluster_partition(base: &ClosedPolyDisc, balls: &[AttachBall], k_max: usize, samples: usize) -> PartitionPlan {
    let size = samples.next_power_of_two().max(16);
    let k_max = k_max.max(2);
    let pts = trace(base, size);
    let label = |p: &Point| -> usize {
        (0..balls.len())
            .min_by(|&a, &b| {
                let da = dist(p, &balls[a].center) - balls[a].radius;
                let db = dist(p, &balls[b].center) - balls[b].radius;
                da.total_cmp(&db)
            })
            .unwrap_or(0)
    };
    let labels: Vec<usize> = pts.iter().map(label).collect();
    // Runs as (first sample, length) in cyclic order starting at a label change.
    let start = (0..size)
        .find(|&k| labels[k] != labels[(k + size - 1) % size])
        .unwrap_or(0);
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for t in 0..size {
        let k = (start + t) % size;
        match runs.last_mut() {
            Some(r) if labels[(r.0) % size] == labels[k] => r.1 += 1,
            _ => runs.push((k, 1)),
        }
    }
    while runs.len() > k_max {
        let (i, _) = runs.iter().enumerate().min_by_key(|(_, r)| r.1).expect("nonempty");
        let n = runs.len();
        let (prev, next) = ((i + n - 1) % n, (i + 1) % n);
        let into = if runs[prev].1 >= runs[next].1 { prev } else { next };
        let len = runs[i].1;
        if into == prev {
            runs[prev].1 += len;
        } else {
            runs[next].0 = runs[i].0;
            runs[next].1 += len;
        }
        runs.remove(i);
    }
    while runs.len() < k_max {
        let (i, _) = runs.iter().enumerate().max_by_key(|(_, r)| r.1).expect("nonempty");
        let (s, len) = runs[i];
        if len < 2 {
            break;
        }
        runs[i] = (s, len / 2);
        runs.insert(i + 1, ((s + len / 2) % size, len - len / 2));
    }
    let step = TAU / size as f64;
    let mut arcs = Vec::with_capacity(runs.len());
    let mut attach = Vec::with_capacity(runs.len());
    let mut cost = 0.0;
    for &(s, len) in &runs {
        let a = s as f64 * step - 0.5 * step;
        arcs.push(Arc::new(a, a + len as f64 * step).expect("nonempty run"));
        let frac = len as f64 / size as f64;
        let maxes = balls.iter().enumerate().map(|(b, ball)| {
            let m = (0..len)
                .map(|t| dist(&pts[(s + t) % size], &ball.center))
                .fold(0.0, f64::max);
            (b, m, ball.radius)
        });
        let (att, c) = best_attach(frac, maxes);
        attach.push(att);
        cost += c;
    }
    PartitionPlan {
        anchors: arcs.iter().map(|a| a.midpoint()).collect(),
        arcs,
        attach,
        cost,
    }
}

/// Samples per arc used to measure `M_j` when building attached discs.
const ARC_SAMPLES: usize = 1024;

/// Build a gluing spec from a plan: constant discs where the base stays in
/// its ball, otherwise the ball disc of radius `r ‖h(η_j) − c‖ / M_j`.
pub fn plan_to_spec(base: &ClosedPolyDisc, plan: &PartitionPlan, balls: &[AttachBall], m: u32) -> Result<GluingSpec> {
    let mut attached = Vec::with_capacity(plan.arcs.len());
    for ((arc, &eta), att) in plan.arcs.iter().zip(&plan.anchors).zip(&plan.attach) {
        let z = base.eval(unit(eta));
        let ball = &balls[att.ball_index()];
        let max_dist = (0..=ARC_SAMPLES)
            .map(|i| {
                let t = arc.start() + arc.fraction() * TAU * i as f64 / ARC_SAMPLES as f64;
                dist(&base.eval(unit(t)), &ball.center)
            })
            .fold(0.0, f64::max)
            * (1.0 + 1e-9);
        let constant = || -> Result<LiftedDisc> {
            let mut comps = vec![FactoredComponent::constant(Complex64::new(1.0, 0.0))];
            comps.extend(z.iter().map(|&c| FactoredComponent::constant(c)));
            LiftedDisc::new(comps)
        };
        let disc = if max_dist < ball.radius {
            constant()?
        } else {
            let r = ball.radius * dist(&z, &ball.center) / max_dist;
            match ball_disc(&z, &ball.center, r) {
                Ok((d, _)) => d,
                Err(_) => constant()?,
            }
        };
        attached.push(disc);
    }
    GluingSpec::new(base.clone(), plan.arcs.clone(), plan.anchors.clone(), attached, m)
}
