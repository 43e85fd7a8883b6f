use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::alpha::{alpha_boundary, alpha_unchecked};
use crate::boundary::{unit, Arc, BoundaryGrid, TAU};
use crate::disc::{report_for, AffineBoundary, AffinePoint, ClosedPolyDisc, LiftedDisc, MembershipReport, SetGeometry};
use crate::functionals::j_of;
use crate::{Error, Result};

/// Data for the glued disc `g̃ = h̃ + Σ_j (f̃_j∘α_j − f̃_j(α_j(0)))`.
///
/// `arcs` partition the circle in counterclockwise order, `anchors[j]` is a
/// point of `arcs[j]`, and `attached[j]` is a closed lifted disc with
/// `f̃_j(0) = (1, h(e^{iη_j}))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct GluingSpec {
    base: ClosedPolyDisc,
    arcs: Vec<Arc>,
    anchors: Vec<f64>,
    attached: Vec<LiftedDisc>,
    m: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    base: ClosedPolyDisc,
    arcs: Vec<Arc>,
    anchors: Vec<f64>,
    attached: Vec<LiftedDisc>,
    m: u32,
}

impl TryFrom<RawSpec> for GluingSpec {
    type Error = Error;
    fn try_from(r: RawSpec) -> Result<Self> {
        Self::new(r.base, r.arcs, r.anchors, r.attached, r.m)
    }
}

impl From<GluingSpec> for RawSpec {
    fn from(s: GluingSpec) -> Self {
        RawSpec {
            base: s.base,
            arcs: s.arcs,
            anchors: s.anchors,
            attached: s.attached,
            m: s.m,
        }
    }
}

/// `(1, h(w))`.
fn lifted_base(base: &ClosedPolyDisc, w: Complex64) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(1.0, 0.0)];
    v.extend(base.eval(w));
    v
}

const COVER_TOL: f64 = 1e-9;

impl GluingSpec {
    pub fn new(
        base: ClosedPolyDisc,
        arcs: Vec<Arc>,
        anchors: Vec<f64>,
        attached: Vec<LiftedDisc>,
        m: u32,
    ) -> Result<Self> {
        let k = arcs.len();
        if k == 0 || anchors.len() != k || attached.len() != k {
            return Err(Error::Gluing(format!(
                "{} arcs, {} anchors and {} attached discs; need equal nonzero counts",
                k,
                anchors.len(),
                attached.len()
            )));
        }
        if m == 0 {
            return Err(Error::Gluing("m must be a positive integer".into()));
        }
        let total: f64 = arcs.iter().map(|a| a.fraction()).sum();
        if (total - 1.0).abs() > COVER_TOL {
            return Err(Error::Gluing(format!("arc lengths sum to {total} of the circle")));
        }
        for j in 0..k {
            let next = &arcs[(j + 1) % k];
            let gap = crate::boundary::angle_distance(arcs[j].end(), next.start());
            if k > 1 && gap > COVER_TOL * TAU {
                return Err(Error::Gluing(format!(
                    "arc {j} does not end where arc {} starts",
                    (j + 1) % k
                )));
            }
        }
        for (j, ((arc, &eta), f)) in arcs.iter().zip(&anchors).zip(&attached).enumerate() {
            if !arc.contains(eta) {
                return Err(Error::Gluing(format!("anchor {j} at {eta} is not in its arc")));
            }
            if f.dimension() != base.dimension() {
                return Err(Error::Gluing(format!("attached disc {j} has the wrong dimension")));
            }
            if f.components().iter().any(|c| !c.sing_num().is_empty()) {
                return Err(Error::Gluing(format!("attached disc {j} is not a closed disc")));
            }
            let want = lifted_base(&base, unit(eta));
            let got = f.eval(Complex64::new(0.0, 0.0));
            let err = want.iter().zip(&got).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            if !(err <= 1e-10) {
                return Err(Error::Gluing(format!(
                    "attached disc {j} is centered {err:e} away from (1, h(anchor))"
                )));
            }
        }
        Ok(Self {
            base,
            arcs,
            anchors,
            attached,
            m,
        })
    }

    pub fn base(&self) -> &ClosedPolyDisc {
        &self.base
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn anchors(&self) -> &[f64] {
        &self.anchors
    }

    pub fn attached(&self) -> &[LiftedDisc] {
        &self.attached
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn with_m(&self, m: u32) -> Result<Self> {
        Self::new(
            self.base.clone(),
            self.arcs.clone(),
            self.anchors.clone(),
            self.attached.clone(),
            m,
        )
    }

    /// `Σ a_j J(f_j)`.
    pub fn comparison_value(&self) -> Result<f64> {
        let mut s = 0.0;
        for (a, f) in self.arcs.iter().zip(&self.attached) {
            s += a.fraction() * j_of(f)?.value;
        }
        Ok(s)
    }
}

/// An evaluable glued lifting.
#[derive(Debug, Clone)]
pub struct GluedDisc {
    spec: GluingSpec,
    /// `f̃_j(α_j(0))`.
    offsets: Vec<Vec<Complex64>>,
}

/// Build the glued lifting of `spec`.
pub fn glue(spec: &GluingSpec) -> Result<GluedDisc> {
    let zero = Complex64::new(0.0, 0.0);
    let offsets: Vec<Vec<Complex64>> = spec
        .arcs
        .iter()
        .zip(&spec.attached)
        .map(|(a, f)| f.eval(alpha_unchecked(a, spec.m, zero)))
        .collect();
    if offsets
        .iter()
        .flatten()
        .any(|c| !(c.re.is_finite() && c.im.is_finite()))
    {
        return Err(Error::Gluing("attached disc evaluation overflowed".into()));
    }
    Ok(GluedDisc {
        spec: spec.clone(),
        offsets,
    })
}

impl GluedDisc {
    pub fn spec(&self) -> &GluingSpec {
        &self.spec
    }

    fn combine(&self, base: Vec<Complex64>, terms: impl Iterator<Item = Vec<Complex64>>) -> Vec<Complex64> {
        let mut v = base;
        for (t, off) in terms.zip(&self.offsets) {
            for ((x, y), o) in v.iter_mut().zip(t).zip(off) {
                *x += y - o;
            }
        }
        v
    }

    /// `g̃(z)` for `|z| ≤ 1`, off the arc endpoints.
    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        let s = &self.spec;
        self.combine(
            lifted_base(&s.base, z),
            s.arcs
                .iter()
                .zip(&s.attached)
                .map(|(a, f)| f.eval(alpha_unchecked(a, s.m, z))),
        )
    }

    /// Radial limit at `e^{iθ}`; `None` within `guard` of an arc endpoint.
    pub fn boundary_value(&self, theta: f64, guard: f64) -> Option<Vec<Complex64>> {
        let s = &self.spec;
        if s.arcs.len() > 1 && s.arcs.iter().any(|a| a.endpoint_distance(theta) < guard) {
            return None;
        }
        let alphas: Option<Vec<Complex64>> = s.arcs.iter().map(|a| alpha_boundary(a, s.m, theta)).collect();
        let alphas = alphas?;
        Some(self.combine(
            lifted_base(&s.base, unit(theta)),
            s.attached.iter().zip(alphas).map(|(f, w)| f.eval(w)),
        ))
    }

    /// Lifted boundary values at `size` uniform angles; `None` at skipped
    /// angles (within `2π/(8N)` of an arc endpoint).
    pub fn boundary_values(&self, size: usize) -> Vec<(f64, Option<Vec<Complex64>>)> {
        let guard = TAU / (8.0 * size as f64);
        (0..size)
            .into_par_iter()
            .map(|k| {
                let t = BoundaryGrid::<f64>::angle_of(size, k);
                (t, self.boundary_value(t, guard))
            })
            .collect()
    }
}

impl AffineBoundary for GluedDisc {
    fn affine_dimension(&self) -> usize {
        self.spec.base.dimension()
    }
    fn affine_boundary(&self, size: usize) -> (Vec<(f64, AffinePoint)>, usize) {
        let mut skipped = 0;
        let mut pts = Vec::with_capacity(size);
        for (t, v) in self.boundary_values(size) {
            match v {
                Some(v) => pts.push((t, crate::disc::project_point(&v))),
                None => skipped += 1,
            }
        }
        (pts, skipped)
    }
}

/// The boundary-integral bound carried by a gluing spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GluingBound {
    /// `∫ log|g̃_0*| dσ − log|g̃_0(0)|`.
    pub bound: f64,
    /// True iff every boundary sample lands in the target set.
    pub valid: bool,
    pub boundary_report: MembershipReport,
    /// `Σ a_j J(f_j)`.
    pub comparison: f64,
    /// Largest `‖g̃*(θ) − f̃_j(α_j*(θ))‖` over samples `θ ∈ A_j`; small when
    /// the base is nearly constant on each arc and `m` is large.
    pub max_attached_distance: f64,
    pub m: u32,
}

pub fn gluing_upper_bound(spec: &GluingSpec, x: &SetGeometry, size: usize) -> Result<GluingBound> {
    if x.dimension() != spec.base.dimension() {
        return Err(Error::Gluing(
            "target set and base disc have different dimensions".into(),
        ));
    }
    let g = glue(spec)?;
    let samples = g.boundary_values(size);
    let center = g.eval(Complex64::new(0.0, 0.0));
    let log0 = center[0].norm().ln();

    let mut sum = 0.0;
    let mut count = 0usize;
    let mut dist = 0.0f64;
    let mut pts = Vec::with_capacity(size);
    for (t, v) in &samples {
        let Some(v) = v else { continue };
        sum += v[0].norm().ln();
        count += 1;
        pts.push(crate::disc::project_point(v));
        if let Some(j) = spec.arcs.iter().position(|a| a.contains(*t)) {
            if let Some(w) = alpha_boundary(&spec.arcs[j], spec.m, *t) {
                let f = spec.attached[j].eval(w);
                let d = v.iter().zip(&f).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
                dist = dist.max(d);
            }
        }
    }
    if count == 0 {
        return Err(Error::Gluing("no boundary samples".into()));
    }
    let report = report_for(pts.iter(), size - count, x, size);
    Ok(GluingBound {
        bound: sum / count as f64 - log0,
        valid: report.all_inside(),
        boundary_report: report,
        comparison: spec.comparison_value()?,
        max_attached_distance: dist,
        m: spec.m,
    })
}

/// Double `m` from `spec.m` until the spec is valid and the bound moves by
/// less than `1e−3`, or `m` would exceed `m_max`. Returns the last spec
/// evaluated that is valid, else the last one.
pub fn escalate(spec: &GluingSpec, x: &SetGeometry, size: usize, m_max: u32) -> Result<(GluingSpec, GluingBound)> {
    let mut cur = spec.clone();
    let mut b = gluing_upper_bound(&cur, x, size)?;
    let mut best: Option<(GluingSpec, GluingBound)> = b.valid.then(|| (cur.clone(), b.clone()));
    while let Some(m) = cur.m.checked_mul(2).filter(|&m| m <= m_max) {
        let next = cur.with_m(m)?;
        let nb = gluing_upper_bound(&next, x, size)?;
        let settled = b.valid && nb.valid && (nb.bound - b.bound).abs() < 1e-3;
        if nb.valid {
            best = Some((next.clone(), nb.clone()));
        }
        cur = next;
        b = nb;
        if settled {
            break;
        }
    }
    Ok(best.unwrap_or((cur, b)))
}
