use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A point of `C^n`.
pub type Point = Vec<Complex64>;

fn dist(p: &[Complex64], q: &[Complex64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
}

/// A building block of a target set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Primitive {
    Ball {
        center: Point,
        radius: f64,
    },
    /// Product of real intervals on each real coordinate, optionally with
    /// its corners rounded by `rounding` (a Minkowski sum with a ball).
    Box {
        lo: Point,
        hi: Point,
        #[serde(default, skip_serializing_if = "is_zero")]
        rounding: f64,
    },
    /// `{inner ≤ ‖p − c‖ ≤ outer}`; `inner = outer` is a sphere.
    Shell {
        center: Point,
        inner: f64,
        outer: f64,
    },
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

impl Primitive {
    pub fn ball(center: Point, radius: f64) -> Self {
        Self::Ball { center, radius }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Self::Ball { center, .. } | Self::Shell { center, .. } => center.len(),
            Self::Box { lo, .. } => lo.len(),
        }
    }

    fn validate(&self, closed: bool) -> Result<()> {
        let finite = |p: &Point| p.iter().all(|c| c.re.is_finite() && c.im.is_finite());
        let ok = match self {
            Self::Ball { center, radius } => finite(center) && *radius > 0.0 && radius.is_finite(),
            Self::Box { lo, hi, rounding } => {
                lo.len() == hi.len()
                    && finite(lo)
                    && finite(hi)
                    && *rounding >= 0.0
                    && lo.iter().zip(hi).all(|(a, b)| {
                        if closed {
                            b.re >= a.re && b.im >= a.im
                        } else {
                            b.re > a.re && b.im > a.im
                        }
                    })
            }
            Self::Shell { center, inner, outer } => {
                finite(center)
                    && *inner >= 0.0
                    && outer.is_finite()
                    && if closed { outer >= inner } else { outer > inner }
            }
        };
        if ok && self.dimension() > 0 {
            Ok(())
        } else {
            Err(Error::Geometry(format!("degenerate primitive {self:?}")))
        }
    }

    /// Signed distance, negative inside.
    pub fn signed_distance(&self, p: &[Complex64]) -> f64 {
        match self {
            Self::Ball { center, radius } => dist(p, center) - radius,
            Self::Shell { center, inner, outer } => {
                let d = dist(p, center);
                (d - outer).max(inner - d)
            }
            Self::Box { lo, hi, rounding } => {
                let mut out = 0.0f64;
                let mut inside = f64::NEG_INFINITY;
                for ((x, a), b) in p.iter().zip(lo).zip(hi) {
                    for (v, l, h) in [(x.re, a.re, b.re), (x.im, a.im, b.im)] {
                        let q = (v - 0.5 * (l + h)).abs() - 0.5 * (h - l);
                        out += q.max(0.0).powi(2);
                        inside = inside.max(q);
                    }
                }
                out.sqrt() + inside.min(0.0) - rounding
            }
        }
    }

    /// The sublevel set `{sd < −δ}` (δ ≥ 0), exact for all three shapes.
    fn shrunk(&self, d: f64) -> Option<Self> {
        let out = match self {
            Self::Ball { center, radius } => Self::Ball {
                center: center.clone(),
                radius: radius - d,
            },
            Self::Shell { center, inner, outer } => Self::Shell {
                center: center.clone(),
                inner: inner + d,
                outer: outer - d,
            },
            Self::Box { lo, hi, rounding } if *rounding >= d => Self::Box {
                lo: lo.clone(),
                hi: hi.clone(),
                rounding: rounding - d,
            },
            Self::Box { lo, hi, rounding } => {
                let e = d - rounding;
                Self::Box {
                    lo: lo.iter().map(|c| c + Complex64::new(e, e)).collect(),
                    hi: hi.iter().map(|c| c - Complex64::new(e, e)).collect(),
                    rounding: 0.0,
                }
            }
        };
        out.validate(false).ok().map(|_| out)
    }

    /// The sublevel set `{sd < δ}` (δ ≥ 0).
    fn grown(&self, d: f64) -> Self {
        match self {
            Self::Ball { center, radius } => Self::Ball {
                center: center.clone(),
                radius: radius + d,
            },
            Self::Shell { center, inner, outer } if *inner <= d => Self::Ball {
                center: center.clone(),
                radius: outer + d,
            },
            Self::Shell { center, inner, outer } => Self::Shell {
                center: center.clone(),
                inner: inner - d,
                outer: outer + d,
            },
            Self::Box { lo, hi, rounding } => Self::Box {
                lo: lo.clone(),
                hi: hi.clone(),
                rounding: rounding + d,
            },
        }
    }

    /// A large ball inside the primitive, if it has interior.
    pub fn inscribed_ball(&self) -> Option<(Point, f64)> {
        match self {
            Self::Ball { center, radius } => Some((center.clone(), *radius)),
            Self::Box { lo, hi, rounding } => {
                let center: Point = lo.iter().zip(hi).map(|(a, b)| 0.5 * (a + b)).collect();
                let half = lo
                    .iter()
                    .zip(hi)
                    .flat_map(|(a, b)| [b.re - a.re, b.im - a.im])
                    .fold(f64::INFINITY, f64::min)
                    / 2.0;
                let r = half + rounding;
                (r > 0.0).then_some((center, r))
            }
            Self::Shell { center, inner, outer } => {
                let r = 0.5 * (outer - inner);
                if r <= 0.0 {
                    return None;
                }
                if *inner == 0.0 {
                    return Some((center.clone(), *outer));
                }
                let mut c = center.clone();
                c[0] += 0.5 * (inner + outer);
                Some((c, r))
            }
        }
    }

    /// Real bounding box `(lo, hi)` over the `2n` real coordinates.
    fn bbox(&self) -> (Vec<f64>, Vec<f64>) {
        let flat = |p: &Point, s: f64| -> Vec<f64> { p.iter().flat_map(|c| [c.re + s, c.im + s]).collect() };
        match self {
            Self::Ball { center, radius } => (flat(center, -radius), flat(center, *radius)),
            Self::Shell { center, outer, .. } => (flat(center, -outer), flat(center, *outer)),
            Self::Box { lo, hi, rounding } => (flat(lo, -rounding), flat(hi, *rounding)),
        }
    }

    /// Deterministic points on the boundary of the primitive.
    fn surface_samples(&self, count: usize) -> Vec<Point> {
        let n = self.dimension();
        let sphere = |center: &Point, r: f64| -> Vec<Point> {
            sphere_directions(n, count)
                .into_iter()
                .map(|u| center.iter().zip(&u).map(|(c, d)| c + d * r).collect())
                .collect()
        };
        match self {
            Self::Ball { center, radius } => sphere(center, *radius),
            Self::Shell { center, inner, outer } => {
                let mut v = sphere(center, *outer);
                if *inner > 0.0 && inner < outer {
                    v.extend(sphere(center, *inner));
                }
                v
            }
            Self::Box { .. } => {
                // Push sphere directions out to the box surface by bisection on
                // the signed distance.
                let (c, _) = self.inscribed_ball().unwrap_or_else(|| {
                    let (lo, hi) = self.bbox();
                    let mid: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| 0.5 * (a + b)).collect();
                    (mid.chunks(2).map(|w| Complex64::new(w[0], w[1])).collect(), 0.0)
                });
                sphere_directions(n, count)
                    .into_iter()
                    .map(|u| {
                        let at = |t: f64| -> Point { c.iter().zip(&u).map(|(a, d)| a + d * t).collect() };
                        let (mut lo, mut hi) = (0.0, 1.0);
                        while self.signed_distance(&at(hi)) < 0.0 {
                            hi *= 2.0;
                        }
                        for _ in 0..60 {
                            let mid = 0.5 * (lo + hi);
                            if self.signed_distance(&at(mid)) < 0.0 {
                                lo = mid;
                            } else {
                                hi = mid;
                            }
                        }
                        at(hi)
                    })
                    .collect()
            }
        }
    }
}

/// Unit vectors in `C^n`: the circle in each complex coordinate, plus a
/// quasi-random fill for `n ≥ 2`.
fn sphere_directions(n: usize, count: usize) -> Vec<Point> {
    let mut out = Vec::with_capacity(count * n.max(1));
    let per = if n == 1 { count } else { count / 2 };
    for k in 0..n {
        for j in 0..per {
            let mut u = vec![Complex64::new(0.0, 0.0); n];
            u[k] = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / per as f64);
            out.push(u);
        }
    }
    if n > 1 {
        // Weyl sequence in the 2n real coordinates mapped through a Gaussian-free
        // normalization; deterministic and dense enough for a max estimate.
        let alphas: Vec<f64> = (0..2 * n).map(|i| ((i + 2) as f64).sqrt().fract()).collect();
        for j in 1..=count * n {
            let v: Vec<f64> = alphas.iter().map(|a| (j as f64 * a).fract() * 2.0 - 1.0).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-9 {
                out.push(v.chunks(2).map(|w| Complex64::new(w[0] / norm, w[1] / norm)).collect());
            }
        }
    }
    out
}

/// An open set (or compact set) as a finite union of primitives.
///
/// Membership with tolerance `τ` means lying in some primitive shrunk by
/// `τ`, i.e. signed distance below `−τ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGeometry", into = "RawGeometry")]
pub struct SetGeometry {
    primitives: Vec<Primitive>,
    tolerance: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    #[serde(default)]
    tolerance: f64,
    primitives: Vec<Primitive>,
}

impl SetGeometry {
    pub fn new(primitives: Vec<Primitive>, tolerance: f64) -> Result<Self> {
        Self::build(primitives, tolerance, false)
    }

    /// A compact set; degenerate boxes and spheres are allowed.
    pub fn compact(primitives: Vec<Primitive>) -> Result<Self> {
        Self::build(primitives, 0.0, true)
    }

    fn build(primitives: Vec<Primitive>, tolerance: f64, closed: bool) -> Result<Self> {
        if primitives.is_empty() {
            return Err(Error::Geometry("no primitives".into()));
        }
        if !(tolerance >= 0.0 && tolerance.is_finite()) {
            return Err(Error::Geometry(format!(
                "tolerance {tolerance} must be finite and nonnegative"
            )));
        }
        let n = primitives[0].dimension();
        for p in &primitives {
            p.validate(closed)?;
            if p.dimension() != n {
                return Err(Error::Geometry("primitives of different dimensions".into()));
            }
        }
        Ok(Self { primitives, tolerance })
    }

    pub fn ball(center: Point, radius: f64) -> Result<Self> {
        Self::new(vec![Primitive::ball(center, radius)], 0.0)
    }

    /// Balls in the plane, given as `(center, radius)`.
    pub fn planar_balls(balls: &[(Complex64, f64)]) -> Result<Self> {
        Self::new(balls.iter().map(|&(c, r)| Primitive::ball(vec![c], r)).collect(), 0.0)
    }

    pub fn primitives(&self) -> &[Primitive] {
        &self.primitives
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn with_tolerance(&self, tolerance: f64) -> Result<Self> {
        Self::new(self.primitives.clone(), tolerance)
    }

    pub fn dimension(&self) -> usize {
        self.primitives[0].dimension()
    }

    pub fn signed_distance(&self, p: &[Complex64]) -> f64 {
        self.primitives
            .iter()
            .map(|q| q.signed_distance(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Distance inside the `τ`-shrunk set; positive means member.
    pub fn margin(&self, p: &[Complex64]) -> f64 {
        -self.signed_distance(p) - self.tolerance
    }

    pub fn contains(&self, p: &[Complex64]) -> bool {
        self.margin(p) > 0.0
    }

    /// Membership in the closure, for compact sets.
    pub fn contains_closed(&self, p: &[Complex64]) -> bool {
        self.signed_distance(p) <= 0.0
    }

    /// Shrink every primitive by `δ`, dropping the ones that vanish.
    pub fn shrink(&self, delta: f64) -> Result<Self> {
        let prims: Vec<Primitive> = self.primitives.iter().filter_map(|p| p.shrunk(delta)).collect();
        if prims.is_empty() {
            return Err(Error::Geometry(format!("shrinking by {delta} empties the set")));
        }
        Self::new(prims, self.tolerance)
    }

    /// The open `δ`-neighbourhood, exact for balls, shells and rounded boxes.
    pub fn neighbourhood(&self, delta: f64) -> Result<Self> {
        if !(delta > 0.0) {
            return Err(Error::Geometry("neighbourhood radius must be positive".into()));
        }
        Self::new(self.primitives.iter().map(|p| p.grown(delta)).collect(), 0.0)
    }

    /// Diameter of the bounding box.
    pub fn diameter(&self) -> f64 {
        let (lo, hi) = self.bbox();
        lo.iter().zip(&hi).map(|(a, b)| (b - a).powi(2)).sum::<f64>().sqrt()
    }

    /// Real bounding box over the `2n` real coordinates.
    pub fn bbox(&self) -> (Vec<f64>, Vec<f64>) {
        let mut it = self.primitives.iter().map(|p| p.bbox());
        let (mut lo, mut hi) = it.next().expect("nonempty");
        for (l, h) in it {
            for i in 0..lo.len() {
                lo[i] = lo[i].min(l[i]);
                hi[i] = hi[i].max(h[i]);
            }
        }
        (lo, hi)
    }

    pub fn smallest_radius(&self) -> f64 {
        self.primitives
            .iter()
            .filter_map(|p| p.inscribed_ball().map(|b| b.1))
            .fold(f64::INFINITY, f64::min)
    }

    /// One inscribed ball per primitive that has interior.
    pub fn inscribed_balls(&self) -> Vec<(Point, f64)> {
        self.primitives.iter().filter_map(|p| p.inscribed_ball()).collect()
    }

    /// Deterministic points on the boundaries of all primitives.
    pub fn surface_samples(&self, per_primitive: usize) -> Vec<Point> {
        self.primitives
            .iter()
            .flat_map(|p| p.surface_samples(per_primitive))
            .collect()
    }
}

impl TryFrom<RawGeometry> for SetGeometry {
    type Error = Error;
    fn try_from(r: RawGeometry) -> Result<Self> {
        Self::build(r.primitives, r.tolerance, true)
    }
}

impl From<SetGeometry> for RawGeometry {
    fn from(g: SetGeometry) -> Self {
        RawGeometry {
            tolerance: g.tolerance,
            primitives: g.primitives,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ball_membership_and_margin() {
        let x = SetGeometry::ball(vec![c(0.0, 0.0)], 1.0).unwrap();
        assert!(x.contains(&[c(0.5, 0.5)]));
        assert!(!x.contains(&[c(1.0, 0.0)]));
        assert!((x.margin(&[c(0.25, 0.0)]) - 0.75).abs() < 1e-15);
        let tight = x.with_tolerance(0.3).unwrap();
        assert!(!tight.contains(&[c(0.8, 0.0)]));
    }

    #[test]
    fn box_distance() {
        let b = Primitive::Box {
            lo: vec![c(0.0, 0.0)],
            hi: vec![c(2.0, 1.0)],
            rounding: 0.0,
        };
        assert!((b.signed_distance(&[c(1.0, 0.5)]) + 0.5).abs() < 1e-15);
        assert!((b.signed_distance(&[c(3.0, 2.0)]) - 2f64.sqrt()).abs() < 1e-15);
        let g = SetGeometry::new(vec![b], 0.0).unwrap();
        let big = g.neighbourhood(0.5).unwrap();
        assert!(big.contains(&[c(2.3, 1.3)]) && !big.contains(&[c(2.4, 1.4)]));
        let small = g.shrink(0.25).unwrap();
        assert!(small.contains(&[c(1.0, 0.5)]) && !small.contains(&[c(0.2, 0.5)]));
    }

    #[test]
    fn shell_neighbourhood_of_circle() {
        let k = SetGeometry::compact(vec![Primitive::Shell {
            center: vec![c(0.0, 0.0)],
            inner: 1.0,
            outer: 1.0,
        }])
        .unwrap();
        assert!(k.contains_closed(&[c(0.0, 1.0)]));
        let u = k.neighbourhood(0.1).unwrap();
        assert!(u.contains(&[c(1.05, 0.0)]) && !u.contains(&[c(0.0, 0.0)]));
        assert!((k.diameter() - 8f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rejects_degenerate_open_sets() {
        assert!(SetGeometry::ball(vec![c(0.0, 0.0)], 0.0).is_err());
        assert!(SetGeometry::new(vec![], 0.0).is_err());
        assert!(SetGeometry::ball(vec![c(0.0, 0.0)], 1.0)
            .unwrap()
            .with_tolerance(-1.0)
            .is_err());
    }

    #[test]
    fn surface_samples_lie_on_surfaces() {
        let g = SetGeometry::new(
            vec![
                Primitive::ball(vec![c(0.0, 0.0), c(1.0, 0.0)], 2.0),
                Primitive::Box {
                    lo: vec![c(-1.0, -1.0), c(0.0, 0.0)],
                    hi: vec![c(1.0, 1.0), c(3.0, 1.0)],
                    rounding: 0.0,
                },
            ],
            0.0,
        )
        .unwrap();
        for prim in g.primitives() {
            for p in prim.surface_samples(16) {
                assert!(prim.signed_distance(&p).abs() < 1e-9);
            }
        }
    }
}
