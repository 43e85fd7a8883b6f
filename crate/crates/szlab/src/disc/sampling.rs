use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::discs::project;
use super::{ClosedPolyDisc, FactoredComponent, FactoredDisc, LiftedDisc, Point, SetGeometry};
use crate::boundary::{angle_distance, fft, BoundaryGrid, TAU};

/// Boundary values at `size` uniform angles with the skipped angles listed.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySamples {
    pub size: usize,
    pub angles: Vec<f64>,
    pub values: Vec<Vec<Complex64>>,
    pub skipped: Vec<f64>,
}

impl BoundarySamples {
    pub fn skipped_fraction(&self) -> f64 {
        self.skipped.len() as f64 / self.size as f64
    }
}

/// Angles within `2π/(8N)` of a singular atom are not sampled.
pub(crate) fn near_atom(theta: f64, atoms: &[f64], size: usize) -> bool {
    let guard = TAU / (8.0 * size as f64);
    atoms.iter().any(|&a| angle_distance(theta, a) < guard)
}

fn sample_components(components: &[FactoredComponent], size: usize) -> BoundarySamples {
    let atoms: Vec<f64> = components.iter().flat_map(|c| c.atom_angles()).collect();
    let cols: Vec<Vec<Option<Complex64>>> = components.iter().map(|c| c.boundary_values(size)).collect();
    let mut out = BoundarySamples {
        size,
        angles: Vec::with_capacity(size),
        values: Vec::with_capacity(size),
        skipped: Vec::new(),
    };
    for k in 0..size {
        let theta = BoundaryGrid::<f64>::angle_of(size, k);
        let v: Option<Vec<Complex64>> = cols.iter().map(|col| col[k]).collect();
        match v {
            Some(v) if !near_atom(theta, &atoms, size) => {
                out.angles.push(theta);
                out.values.push(v);
            }
            _ => out.skipped.push(theta),
        }
    }
    out
}

/// Discs stored as a list of factored components.
pub trait ComponentDisc {
    fn component_list(&self) -> &[FactoredComponent];
}

impl ComponentDisc for FactoredDisc {
    fn component_list(&self) -> &[FactoredComponent] {
        self.components()
    }
}

impl ComponentDisc for LiftedDisc {
    fn component_list(&self) -> &[FactoredComponent] {
        self.components()
    }
}

/// Radial limits of every component at `size` uniform angles. For a lifted
/// disc the values lie in `C^{n+1}`.
pub fn boundary_samples<D: ComponentDisc>(d: &D, size: usize) -> BoundarySamples {
    sample_components(d.component_list(), size)
}

/// One boundary point after projection to affine space.
#[derive(Debug, Clone, PartialEq)]
pub enum AffinePoint {
    Finite(Point),
    /// On the hyperplane at infinity.
    Infinite,
}

pub(crate) fn project_point(v: &[Complex64]) -> AffinePoint {
    project(v).map_or(AffinePoint::Infinite, AffinePoint::Finite)
}

/// Anything with an affine boundary trace.
pub trait AffineBoundary {
    fn affine_dimension(&self) -> usize;
    /// Projected radial limits at the non-skipped angles, and the number of
    /// skipped angles.
    fn affine_boundary(&self, size: usize) -> (Vec<(f64, AffinePoint)>, usize);
}

impl AffineBoundary for FactoredDisc {
    fn affine_dimension(&self) -> usize {
        self.dimension()
    }
    fn affine_boundary(&self, size: usize) -> (Vec<(f64, AffinePoint)>, usize) {
        let s = boundary_samples(self, size);
        let pts = s
            .angles
            .into_iter()
            .zip(s.values)
            .map(|(t, v)| (t, AffinePoint::Finite(v)))
            .collect();
        (pts, s.skipped.len())
    }
}

impl AffineBoundary for LiftedDisc {
    fn affine_dimension(&self) -> usize {
        self.dimension()
    }
    fn affine_boundary(&self, size: usize) -> (Vec<(f64, AffinePoint)>, usize) {
        let s = boundary_samples(self, size);
        let pts = s
            .angles
            .into_iter()
            .zip(s.values)
            .map(|(t, v)| (t, project_point(&v)))
            .collect();
        (pts, s.skipped.len())
    }
}

impl AffineBoundary for ClosedPolyDisc {
    fn affine_dimension(&self) -> usize {
        self.dimension()
    }
    fn affine_boundary(&self, size: usize) -> (Vec<(f64, AffinePoint)>, usize) {
        let cols: Vec<Vec<Complex64>> = self.coords().iter().map(|p| fft::eval_on_circle(p, size)).collect();
        let pts = (0..size)
            .map(|k| {
                let theta = BoundaryGrid::<f64>::angle_of(size, k);
                (theta, AffinePoint::Finite(cols.iter().map(|c| c[k]).collect()))
            })
            .collect();
        (pts, 0)
    }
}

/// How much of a boundary trace lands in a target set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    /// Sampling resolution `N`.
    pub grid: usize,
    pub sampled: usize,
    pub skipped_fraction: f64,
    pub fraction_inside: f64,
    /// Smallest distance inside the `τ`-shrunk set; negative when some sample
    /// is outside. Points at infinity count as `−f64::MAX`.
    pub worst_margin: f64,
}

impl MembershipReport {
    /// Accepted as a numerical member of the class at this resolution.
    pub fn all_inside(&self) -> bool {
        self.sampled > 0 && self.fraction_inside == 1.0
    }
}

pub fn check_boundary_in<D: AffineBoundary + ?Sized>(d: &D, x: &SetGeometry, size: usize) -> MembershipReport {
    let (pts, skipped) = d.affine_boundary(size);
    report_for(pts.iter().map(|p| &p.1), skipped, x, size)
}

pub(crate) fn report_for<'a>(
    pts: impl Iterator<Item = &'a AffinePoint>,
    skipped: usize,
    x: &SetGeometry,
    size: usize,
) -> MembershipReport {
    let mut inside = 0usize;
    let mut total = 0usize;
    let mut worst = f64::MAX;
    for p in pts {
        total += 1;
        let m = match p {
            AffinePoint::Finite(v) => x.margin(v),
            AffinePoint::Infinite => -f64::MAX,
        };
        if m > 0.0 {
            inside += 1;
        }
        worst = worst.min(m);
    }
    MembershipReport {
        grid: size,
        sampled: total,
        skipped_fraction: skipped as f64 / size as f64,
        fraction_inside: if total == 0 { 0.0 } else { inside as f64 / total as f64 },
        worst_margin: if total == 0 { -f64::MAX } else { worst },
    }
}
