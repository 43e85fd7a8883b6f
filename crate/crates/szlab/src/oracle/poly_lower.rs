use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{OracleMethod, OracleValue};
use crate::disc::Point;
use crate::optim::{gaussian, minimize, restart_rng, SimplexOptions};
use crate::{Error, Result};

/// `p(w) = Π_k (⟨u_k, w⟩ − s_k)` with `⟨u, w⟩ = Σ_j u_j w_j`.
///
/// In the plane every factor has `u_k = 1`, so `s_k` are the roots and `p`
/// is monic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearForms {
    pub forms: Vec<LinearForm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearForm {
    pub u: Vec<Complex64>,
    pub s: Complex64,
}

impl LinearForms {
    pub fn degree(&self) -> usize {
        self.forms.len()
    }

    /// `log|p(w)|`.
    pub fn log_abs(&self, w: &[Complex64]) -> f64 {
        self.forms
            .iter()
            .map(|f| {
                (f.u.iter().zip(w).map(|(a, b)| a * b).sum::<Complex64>() - f.s)
                    .norm()
                    .ln()
            })
            .sum()
    }

    pub fn eval(&self, w: &[Complex64]) -> Complex64 {
        self.forms
            .iter()
            .map(|f| f.u.iter().zip(w).map(|(a, b)| a * b).sum::<Complex64>() - f.s)
            .product()
    }

    /// `log max_K |p|` over sample points.
    pub fn log_max_on(&self, k: &[Point]) -> f64 {
        k.iter().map(|w| self.log_abs(w)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// `(1/d)(log|p(z)| − log max_K|p|)`: `+∞` when `p` vanishes on every
    /// sample but not at `z`, `−∞` when `p(z) = 0`.
    pub fn lower_bound(&self, k: &[Point], z: &[Complex64]) -> f64 {
        let at = self.log_abs(z);
        if at == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        let m = self.log_max_on(k);
        if m == f64::NEG_INFINITY {
            return f64::INFINITY;
        }
        (at - m) / self.degree() as f64
    }
}

struct Layout {
    n: usize,
    d: usize,
}

impl Layout {
    fn per_form(&self) -> usize {
        if self.n == 1 {
            2
        } else {
            2 * (self.n + 1)
        }
    }

    fn forms(&self, v: &[f64]) -> LinearForms {
        let k = self.per_form();
        LinearForms {
            forms: v
                .chunks(k)
                .take(self.d)
                .map(|c| {
                    if self.n == 1 {
                        LinearForm {
                            u: vec![Complex64::new(1.0, 0.0)],
                            s: Complex64::new(c[0], c[1]),
                        }
                    } else {
                        LinearForm {
                            u: c[..2 * self.n].chunks(2).map(|p| Complex64::new(p[0], p[1])).collect(),
                            s: Complex64::new(c[2 * self.n], c[2 * self.n + 1]),
                        }
                    }
                })
                .collect(),
        }
    }

    fn params(&self, f: &LinearForms) -> Vec<f64> {
        let mut v = Vec::new();
        for form in &f.forms {
            if self.n > 1 {
                v.extend(form.u.iter().flat_map(|c| [c.re, c.im]));
            }
            v.extend([form.s.re, form.s.im]);
        }
        v
    }
}

/// The form `⟨w − q, conj(z − q)⟩`, largest at `z` among points at the same
/// distance from `q`.
fn toward(z: &[Complex64], q: &[Complex64]) -> LinearForm {
    let n = z.len();
    if n == 1 {
        return LinearForm {
            u: vec![Complex64::new(1.0, 0.0)],
            s: q[0],
        };
    }
    let u: Vec<Complex64> = z.iter().zip(q).map(|(a, b)| (a - b).conj()).collect();
    let s = u.iter().zip(q).map(|(a, b)| a * b).sum();
    LinearForm { u, s }
}

/// Greedy Leja sequence of `count` points of `k`.
fn leja(k: &[Point], count: usize) -> Vec<Point> {
    let dist = |a: &Point, b: &Point| a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
    let norm = |a: &Point| a.iter().map(|x| x.norm_sqr()).sum::<f64>();
    let first = k.iter().max_by(|a, b| norm(a).total_cmp(&norm(b))).expect("nonempty");
    let mut out = vec![first.clone()];
    let mut score: Vec<f64> = k.iter().map(|w| dist(w, first).ln()).collect();
    while out.len() < count {
        let (i, _) = score
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("nonempty");
        let p = k[i].clone();
        for (s, w) in score.iter_mut().zip(k) {
            *s += dist(w, &p).ln();
        }
        out.push(p);
    }
    out
}

/// Best `(1/d) log(|p(z)| / max_K|p|)` over products of `d` linear forms.
///
/// Any returned finite value is a lower bound for the extremal function of
/// the sampled set at `z`, with the polynomial as certificate. Seeds are
/// the Leja points of `k`, the centroid with multiplicity `d`, and seeded
/// perturbations of both; each is refined by simplex search.
pub fn poly_lower(k: &[Point], z: &[Complex64], d: usize, budget: usize, seed: u64) -> Result<OracleValue> {
    if d == 0 || k.is_empty() {
        return Err(Error::Config("poly_lower needs d ≥ 1 and a nonempty sample".into()));
    }
    let n = z.len();
    if k.iter().any(|w| w.len() != n) {
        return Err(Error::Config("sample points and z have different dimensions".into()));
    }
    let layout = Layout { n, d };
    let centroid: Point = (0..n)
        .map(|j| k.iter().map(|w| w[j]).sum::<Complex64>() / k.len() as f64)
        .collect();
    let mut seeds: Vec<LinearForms> = vec![
        LinearForms {
            forms: leja(k, d).iter().map(|q| toward(z, q)).collect(),
        },
        LinearForms {
            forms: vec![toward(z, &centroid); d],
        },
    ];
    let spread = k
        .iter()
        .map(|w| {
            w.iter()
                .zip(&centroid)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max)
        .max(1e-12);
    let base: Vec<Vec<f64>> = seeds.iter().map(|s| layout.params(s)).collect();
    let mut starts = base.clone();
    let mut idx = 0u64;
    while starts.len() < budget.max(2) {
        let mut rng = restart_rng(seed, idx);
        let parent = &base[idx as usize % base.len()];
        starts.push(parent.iter().map(|&p| p + 0.3 * spread * gaussian(&mut rng)).collect());
        idx += 1;
    }
    seeds.clear();

    let objective = |v: &[f64]| -> f64 {
        let lb = layout.forms(v).lower_bound(k, z);
        if lb == f64::INFINITY {
            f64::NEG_INFINITY
        } else {
            -lb
        }
    };
    let nm = SimplexOptions {
        max_evals: 200 * base[0].len().max(1),
        step: 0.1 * spread,
        xtol: 1e-9 * spread,
        ftol: 1e-10,
    };
    let best = starts
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            // Seeds that already separate completely need no search.
            if objective(s) == f64::NEG_INFINITY {
                return (i, s.clone());
            }
            (i, minimize(objective, s, &nm).x)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .map(|(i, v)| (i, layout.forms(&v)))
        .map(|(i, f)| (i, f.lower_bound(k, z), f))
        .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
        .expect("at least two starts");
    Ok(OracleValue {
        value: best.1,
        method: OracleMethod::PolyLower,
        error_estimate: 0.0,
        polynomial: Some(best.2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn circle(center: Complex64, r: f64, m: usize) -> Vec<Point> {
        (0..m)
            .map(|k| vec![center + Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / m as f64)])
            .collect()
    }

    #[test]
    fn identity_on_the_unit_circle() {
        let k = circle(c(0.0, 0.0), 1.0, 256);
        let v = poly_lower(&k, &[c(2.0, 0.0)], 1, 2, 0).unwrap();
        assert!((v.value - 2f64.ln()).abs() < 1e-9, "{}", v.value);
    }

    #[test]
    fn vanishing_on_the_sample_is_flagged() {
        let k = vec![vec![c(0.0, 0.0)], vec![c(4.0, 0.0)]];
        let v = poly_lower(&k, &[c(2.0, 0.0)], 2, 2, 0).unwrap();
        assert_eq!(v.value, f64::INFINITY);
        let p = v.polynomial.unwrap();
        assert!((p.eval(&[c(2.0, 0.0)]).norm() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn zero_at_the_point_is_minus_infinity() {
        let p = LinearForms {
            forms: vec![LinearForm {
                u: vec![c(1.0, 0.0)],
                s: c(2.0, 0.0),
            }],
        };
        assert_eq!(
            p.lower_bound(&circle(c(0.0, 0.0), 1.0, 8), &[c(2.0, 0.0)]),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn two_dimensional_ball() {
        // ⟨w, conj z⟩ on the unit sphere is at most ‖z‖, and equals ‖z‖² at z.
        // The search can overfit a coarse sample, so the certificate is
        // re-checked on a much denser one.
        let ball = crate::disc::SetGeometry::ball(vec![c(0.0, 0.0), c(0.0, 0.0)], 1.0).unwrap();
        let z = [c(1.0, 1.0), c(0.0, -1.0)];
        let v = poly_lower(&ball.surface_samples(400), &z, 1, 2, 0).unwrap();
        let norm = 3f64.sqrt();
        assert!(v.value > norm.ln() - 0.05, "{}", v.value);
        let mut rng = restart_rng(7, 0);
        let uniform: Vec<Point> = (0..20000)
            .map(|_| {
                let g: Vec<Complex64> = (0..2).map(|_| c(gaussian(&mut rng), gaussian(&mut rng))).collect();
                let r = g.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
                g.iter().map(|x| x / r).collect()
            })
            .collect();
        let dense = v.polynomial.unwrap().lower_bound(&uniform, &z);
        assert!(dense <= norm.ln() + 0.02, "{dense}");
    }
}
