//! Dense complex polynomials with coefficients in ascending order.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::boundary::BlaschkeData;

pub(crate) use crate::boundary::horner_eval as eval;

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);

/// Drop trailing zero coefficients, keeping at least one entry.
pub fn trim(p: &[Complex64]) -> Vec<Complex64> {
    let mut v = p.to_vec();
    while v.len() > 1 && v.last() == Some(&C0) {
        v.pop();
    }
    if v.is_empty() {
        v.push(C0);
    }
    v
}

pub fn degree(p: &[Complex64]) -> usize {
    trim(p).len() - 1
}

pub fn is_zero(p: &[Complex64]) -> bool {
    p.iter().all(|c| *c == C0)
}

pub fn mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return vec![C0];
    }
    let mut out = vec![C0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn add(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![C0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

pub fn scale(a: &[Complex64], s: Complex64) -> Vec<Complex64> {
    a.iter().map(|c| c * s).collect()
}

/// `lead · Π (z − r)`.
pub fn from_roots(roots: &[Complex64], lead: Complex64) -> Vec<Complex64> {
    roots.iter().fold(vec![lead], |acc, &r| mul(&acc, &[-r, C1]))
}

fn derivative(p: &[Complex64]) -> Vec<Complex64> {
    p.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

/// Roots from the eigenvalues of the companion matrix, polished by Newton.
///
/// Leading coefficients below `1e−14` of the largest one are dropped (their
/// roots are numerically at infinity). If the Schur iteration does not
/// converge, Aberth iteration is used instead. Non-finite input gives NaN
/// roots.
pub fn roots(p: &[Complex64]) -> Vec<Complex64> {
    let mut p = trim(p);
    if p.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return vec![Complex64::new(f64::NAN, f64::NAN); p.len() - 1];
    }
    let big = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
    while p.len() > 1 && p[p.len() - 1].norm() <= 1e-14 * big {
        p.pop();
    }
    let d = p.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let lead = p[d];
    let mut comp = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        comp[(i, i - 1)] = C1;
    }
    for i in 0..d {
        comp[(i, d - 1)] = -p[i] / lead;
    }
    let eig: Vec<Complex64> = match comp.try_schur(f64::EPSILON, 1000) {
        Some(s) => s
            .eigenvalues()
            .expect("complex Schur form is triangular")
            .iter()
            .copied()
            .collect(),
        None => aberth(&p),
    };
    let dp = derivative(&p);
    eig.iter()
        .map(|&r0| {
            let mut r = r0;
            for _ in 0..3 {
                let f = eval(&p, r);
                let g = eval(&dp, r);
                if g.norm() == 0.0 {
                    break;
                }
                let next = r - f / g;
                if !(eval(&p, next).norm() < f.norm()) {
                    break;
                }
                r = next;
            }
            r
        })
        .collect()
}

/// Simultaneous Aberth–Ehrlich iteration from points on a circle.
fn aberth(p: &[Complex64]) -> Vec<Complex64> {
    let d = p.len() - 1;
    let dp = derivative(p);
    // Cauchy bound on the root moduli.
    let bound = 1.0 + p[..d].iter().map(|c| (c / p[d]).norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(0.5 * bound, 0.4 + std::f64::consts::TAU * k as f64 / d as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let ratio = eval(p, z[i]) / eval(&dp, z[i]);
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| C1 / (z[i] - z[j])).sum();
            let w = ratio / (C1 - ratio * s);
            if w.re.is_finite() && w.im.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Inner-outer split of a polynomial on the disc.
///
/// Returns the Blaschke product of the roots in the open disc and the
/// polynomial `q` with `p = B·q` and no roots in the open disc. Roots whose
/// modulus lies within `tol` of 1 go to `q` and are returned separately so
/// callers can reject them.
pub struct PolyFactors {
    pub blaschke: BlaschkeData,
    pub outer: Vec<Complex64>,
    pub near_circle: Vec<Complex64>,
}

pub fn inner_outer(p: &[Complex64], tol: f64) -> PolyFactors {
    let p = trim(p);
    let mut inside = Vec::new();
    let mut near = Vec::new();
    let mut outer = p.clone();
    for r in roots(&p) {
        let m = r.norm();
        if (m - 1.0).abs() <= tol {
            near.push(r);
        }
        if m < 1.0 - tol {
            // z − r = B_r(z) · (−r/|r|)(1 − r̄z), and z = B_0(z) · 1.
            inside.push((r, 1));
            outer = deflate(&outer, r);
            if m > 0.0 {
                outer = mul(&outer, &scale(&[C1, -r.conj()], -r / m));
            }
        }
    }
    PolyFactors {
        blaschke: BlaschkeData::new(inside).expect("roots inside the disc"),
        outer,
        near_circle: near,
    }
}

/// Quotient of `p` by `z − r`, dropping the remainder.
fn deflate(p: &[Complex64], r: Complex64) -> Vec<Complex64> {
    let d = p.len() - 1;
    if d == 0 {
        return p.to_vec();
    }
    let mut q = vec![C0; d];
    let mut acc = p[d];
    for k in (0..d).rev() {
        q[k] = acc;
        acc = p[k] + acc * r;
    }
    q
}
