//! Green function of a planar complement with pole at infinity.
//!
//! The Laplace problem lives on the disc `|w − o| < R` around the center `o`
//! of the set's bounding box, discretized by the five-point stencil on a
//! square grid of `n` cells per side with staircase boundaries: nodes in the
//! closed set `X` hold 0 and nodes outside the disc hold the outer data.
//! Two solves (outer data `log|w − o|` and `1`) are combined so that the
//! discrete flux into `X` equals `2π`, which removes the unknown Robin
//! constant from the outer boundary condition.
//!
//! Each solve is conjugate gradients preconditioned by a multigrid V-cycle
//! with symmetric red-black Gauss-Seidel smoothing.

use num_complex::Complex64;

use super::{OracleMethod, OracleValue};
use crate::disc::SetGeometry;
use crate::{Error, Result};

const TOL: f64 = 1e-10;
/// Relative residual the solver must reach before the divergence flag.
const DIVERGENCE: f64 = 1e-8;
const MAX_ITERS: usize = 400;
const COARSEST_CELLS: usize = 8;
const COARSE_SWEEPS: usize = 40;

#[derive(Debug, Clone)]
struct Level {
    n: usize,
    h: f64,
    /// True at unknown nodes; `(n + 1)²` entries, row-major.
    unknown: Vec<bool>,
}

impl Level {
    fn stride(&self) -> usize {
        self.n + 1
    }

    fn coarsen(&self) -> Option<Level> {
        if self.n % 2 != 0 || self.n / 2 < COARSEST_CELLS {
            return None;
        }
        let nc = self.n / 2;
        let (s, sc) = (self.stride(), nc + 1);
        let mut unknown = vec![false; sc * sc];
        for i in 0..=nc {
            for j in 0..=nc {
                unknown[i * sc + j] = self.unknown[2 * i * s + 2 * j];
            }
        }
        Some(Level {
            n: nc,
            h: 2.0 * self.h,
            unknown,
        })
    }

    /// `out = A u` at unknowns, zero elsewhere. `u` must vanish off the
    /// unknowns.
    fn apply(&self, u: &[f64], out: &mut [f64]) {
        let s = self.stride();
        let inv = 1.0 / (self.h * self.h);
        for i in 1..self.n {
            for j in 1..self.n {
                let p = i * s + j;
                out[p] = if self.unknown[p] {
                    (4.0 * u[p] - u[p - 1] - u[p + 1] - u[p - s] - u[p + s]) * inv
                } else {
                    0.0
                };
            }
        }
    }

    fn sweep(&self, u: &mut [f64], r: &[f64], color: usize) {
        let s = self.stride();
        let h2 = self.h * self.h;
        for i in 1..self.n {
            let j0 = 1 + (i + 1 + color) % 2;
            for j in (j0..self.n).step_by(2) {
                let p = i * s + j;
                if self.unknown[p] {
                    u[p] = 0.25 * (h2 * r[p] + u[p - 1] + u[p + 1] + u[p - s] + u[p + s]);
                }
            }
        }
    }

    fn restrict(&self, fine: &[f64], coarse: &Level) -> Vec<f64> {
        let (s, sc) = (self.stride(), coarse.stride());
        let mut out = vec![0.0; sc * sc];
        for i in 1..coarse.n {
            for j in 1..coarse.n {
                let q = i * sc + j;
                if !coarse.unknown[q] {
                    continue;
                }
                let p = 2 * i * s + 2 * j;
                let at = |k: usize| if self.unknown[k] { fine[k] } else { 0.0 };
                let edge = at(p - 1) + at(p + 1) + at(p - s) + at(p + s);
                let diag = at(p - s - 1) + at(p - s + 1) + at(p + s - 1) + at(p + s + 1);
                out[q] = 0.25 * (at(p) + 0.5 * edge + 0.25 * diag);
            }
        }
        out
    }

    /// `u += P e` at fine unknowns.
    fn prolong_add(&self, coarse: &Level, e: &[f64], u: &mut [f64]) {
        let (s, sc) = (self.stride(), coarse.stride());
        for i in 1..self.n {
            for j in 1..self.n {
                let p = i * s + j;
                if !self.unknown[p] {
                    continue;
                }
                let (ci, cj) = (i / 2, j / 2);
                let v = match (i % 2, j % 2) {
                    (0, 0) => e[ci * sc + cj],
                    (1, 0) => 0.5 * (e[ci * sc + cj] + e[(ci + 1) * sc + cj]),
                    (0, 1) => 0.5 * (e[ci * sc + cj] + e[ci * sc + cj + 1]),
                    _ => {
                        0.25 * (e[ci * sc + cj]
                            + e[(ci + 1) * sc + cj]
                            + e[ci * sc + cj + 1]
                            + e[(ci + 1) * sc + cj + 1])
                    }
                };
                u[p] += v;
            }
        }
    }
}

struct Multigrid {
    levels: Vec<Level>,
}

impl Multigrid {
    fn new(fine: Level) -> Self {
        let mut levels = vec![fine];
        while let Some(c) = levels.last().and_then(Level::coarsen) {
            levels.push(c);
        }
        Self { levels }
    }

    fn vcycle(&self, l: usize, r: &[f64]) -> Vec<f64> {
        let lv = &self.levels[l];
        let mut e = vec![0.0; r.len()];
        if l + 1 == self.levels.len() {
            for _ in 0..COARSE_SWEEPS {
                lv.sweep(&mut e, r, 0);
                lv.sweep(&mut e, r, 1);
                lv.sweep(&mut e, r, 1);
                lv.sweep(&mut e, r, 0);
            }
            return e;
        }
        lv.sweep(&mut e, r, 0);
        lv.sweep(&mut e, r, 1);
        let mut ae = vec![0.0; r.len()];
        lv.apply(&e, &mut ae);
        let res: Vec<f64> = r
            .iter()
            .zip(&ae)
            .zip(&lv.unknown)
            .map(|((a, b), &k)| if k { a - b } else { 0.0 })
            .collect();
        let coarse = &self.levels[l + 1];
        let rc = lv.restrict(&res, coarse);
        let ec = self.vcycle(l + 1, &rc);
        lv.prolong_add(coarse, &ec, &mut e);
        lv.sweep(&mut e, r, 1);
        lv.sweep(&mut e, r, 0);
        e
    }

    /// Solve `A u = b` on the finest level; returns the solution and the
    /// final relative residual.
    fn solve(&self, b: &[f64]) -> (Vec<f64>, f64) {
        let lv = &self.levels[0];
        let dot = |a: &[f64], c: &[f64]| a.iter().zip(c).map(|(x, y)| x * y).sum::<f64>();
        let bn = dot(b, b).sqrt();
        let mut u = vec![0.0; b.len()];
        if bn == 0.0 {
            return (u, 0.0);
        }
        let mut r = b.to_vec();
        let mut z = self.vcycle(0, &r);
        let mut p = z.clone();
        let mut rz = dot(&r, &z);
        let mut ap = vec![0.0; b.len()];
        let mut rel = 1.0;
        for _ in 0..MAX_ITERS {
            lv.apply(&p, &mut ap);
            let alpha = rz / dot(&p, &ap);
            for k in 0..u.len() {
                u[k] += alpha * p[k];
                r[k] -= alpha * ap[k];
            }
            rel = dot(&r, &r).sqrt() / bn;
            if rel < TOL {
                break;
            }
            z = self.vcycle(0, &r);
            let rz_new = dot(&r, &z);
            let beta = rz_new / rz;
            rz = rz_new;
            for k in 0..p.len() {
                p[k] = z[k] + beta * p[k];
            }
        }
        (u, rel)
    }
}

/// Full-grid solution of the Green-function problem.
#[derive(Debug, Clone)]
pub struct GreenSolution {
    pub n: usize,
    pub radius: f64,
    pub center: Complex64,
    /// `V` at every node, row-major over `(re, im)` indices.
    pub values: Vec<f64>,
    /// Relative residual reached by the worse of the two solves.
    pub residual: f64,
}

impl GreenSolution {
    /// Bilinear interpolation at `z`.
    pub fn at(&self, z: Complex64) -> f64 {
        let h = 2.0 * self.radius / self.n as f64;
        let t = (z - self.center + Complex64::new(self.radius, self.radius)) / h;
        let i = (t.re.floor() as isize).clamp(0, self.n as isize - 1) as usize;
        let j = (t.im.floor() as isize).clamp(0, self.n as isize - 1) as usize;
        let (fx, fy) = (t.re - i as f64, t.im - j as f64);
        let s = self.n + 1;
        let v = |a: usize, b: usize| self.values[a * s + b];
        (1.0 - fx) * ((1.0 - fy) * v(i, j) + fy * v(i, j + 1)) + fx * ((1.0 - fy) * v(i + 1, j) + fy * v(i + 1, j + 1))
    }
}

/// Solve on a grid of `n` cells per side (rounded up to a multiple of 64)
/// over the square of half-width `radius` around the set's center.
fn solve_green(x: &SetGeometry, n: usize, radius: f64) -> Result<GreenSolution> {
    let n = n.div_ceil(64).max(1) * 64;
    let (lo, hi) = x.bbox();
    let center = Complex64::new(0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1]));
    let h = 2.0 * radius / n as f64;
    let s = n + 1;
    let node = |i: usize, j: usize| center + Complex64::new(-radius + i as f64 * h, -radius + j as f64 * h);

    let mut in_x = vec![false; s * s];
    let mut outer = vec![false; s * s];
    let mut unknown = vec![false; s * s];
    for i in 0..s {
        for j in 0..s {
            let p = i * s + j;
            let w = node(i, j);
            if (w - center).norm() >= radius {
                outer[p] = true;
            } else if x.signed_distance(&[w]) <= 0.0 {
                in_x[p] = true;
            } else {
                unknown[p] = true;
            }
        }
    }
    if !in_x.iter().any(|&b| b) {
        return Err(Error::Oracle(format!(
            "the grid with {n} cells does not resolve the set"
        )));
    }
    let mg = Multigrid::new(Level {
        n,
        h,
        unknown: unknown.clone(),
    });

    // Right-hand sides from the outer data.
    let rhs = |g: &dyn Fn(usize) -> f64| -> Vec<f64> {
        let inv = 1.0 / (h * h);
        let mut b = vec![0.0; s * s];
        for i in 1..n {
            for j in 1..n {
                let p = i * s + j;
                if unknown[p] {
                    b[p] = [p - 1, p + 1, p - s, p + s]
                        .into_iter()
                        .filter(|&q| outer[q])
                        .map(|q| g(q) * inv)
                        .sum();
                }
            }
        }
        b
    };
    let log_outer = |q: usize| (node(q / s, q % s) - center).norm().ln();
    let (u0, r0) = mg.solve(&rhs(&log_outer));
    let (phi, r1) = mg.solve(&rhs(&|_| 1.0));
    let residual = r0.max(r1);
    if !(residual < DIVERGENCE) {
        return Err(Error::Oracle(format!("relaxation residual stalled at {residual:e}")));
    }

    let flux = |u: &[f64]| -> f64 {
        let mut f = 0.0;
        for i in 1..n {
            for j in 1..n {
                let p = i * s + j;
                if unknown[p] {
                    let k = [p - 1, p + 1, p - s, p + s].into_iter().filter(|&q| in_x[q]).count();
                    f += k as f64 * u[p];
                }
            }
        }
        f
    };
    let gamma = (flux(&u0) - std::f64::consts::TAU) / flux(&phi);
    let values = (0..s * s)
        .map(|p| {
            if in_x[p] {
                0.0
            } else if outer[p] {
                log_outer(p) - gamma
            } else {
                u0[p] - gamma * phi[p]
            }
        })
        .collect();
    Ok(GreenSolution {
        n,
        radius,
        center,
        values,
        residual,
    })
}

/// `V_X(z)` for a planar set from the Green function of its complement.
///
/// `error_estimate = |v(R, n) − v(2R, n)| + |v(R, n) − v(R, n/2)|`.
pub fn pde_green(x: &SetGeometry, z: Complex64, n: usize, radius: f64) -> Result<OracleValue> {
    if x.dimension() != 1 {
        return Err(Error::Unsupported("the PDE oracle is planar only".into()));
    }
    let diam = x.diameter();
    if !(radius >= 4.0 * diam) {
        return Err(Error::Config(format!(
            "outer radius {radius} is below 4 × diameter = {}",
            4.0 * diam
        )));
    }
    if x.contains_closed(&[z]) {
        return Ok(OracleValue {
            value: 0.0,
            method: OracleMethod::Pde,
            error_estimate: 0.0,
            polynomial: None,
        });
    }
    let (v, (v_far, v_coarse)) = rayon::join(
        || solve_green(x, n, radius),
        || rayon::join(|| solve_green(x, n, 2.0 * radius), || solve_green(x, n / 2, radius)),
    );
    let (v, v_far, v_coarse) = (v?.at(z), v_far?.at(z), v_coarse?.at(z));
    Ok(OracleValue {
        value: v,
        method: OracleMethod::Pde,
        error_estimate: (v - v_far).abs() + (v - v_coarse).abs(),
        polynomial: None,
    })
}

/// The full solution, for callers that need more than one point.
pub fn green_solution(x: &SetGeometry, n: usize, radius: f64) -> Result<GreenSolution> {
    solve_green(x, n, radius)
}
