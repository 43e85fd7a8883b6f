use num_complex::Complex64;
use szlab::boundary::Arc;
use szlab::disc::{ClosedPolyDisc, SetGeometry};
use szlab::glue::{
    alpha, alpha_boundary, alpha_moments, ball_disc, cluster_partition, escalate, g_class_check, glue,
    gluing_upper_bound, optimal_partition, plan_to_spec, AttachBall, GluingSpec,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn two_discs() -> SetGeometry {
    SetGeometry::planar_balls(&[(c(0.0, 0.0), 1.0), (c(4.0, 0.0), 1.0)]).unwrap()
}

fn attach_balls(r: f64) -> Vec<AttachBall> {
    vec![
        AttachBall {
            center: vec![c(0.0, 0.0)],
            radius: r,
        },
        AttachBall {
            center: vec![c(4.0, 0.0)],
            radius: r,
        },
    ]
}

#[test]
fn alpha_boundary_moduli() {
    let arc = Arc::from_fraction(0.4, 0.5).unwrap();
    let len = std::f64::consts::PI;
    for m in [1u32, 10, 100] {
        for k in 0..40 {
            let t = 0.4 + k as f64 * len / 20.0 + 0.01;
            let limit = alpha_boundary(&arc, m, t).unwrap();
            let want = if arc.contains(t) { 1.0 } else { (-(m as f64)).exp() };
            assert!((limit.norm() - want).abs() < 1e-12 * want.max(1e-30).max(1.0));
        }
    }
}

#[test]
fn alpha_near_the_circle_deviates_by_about_m_eps_over_pi() {
    // Opposite the arc midpoint, 1 − |α(rζ)| ≈ m(1 − r)/π for a half circle.
    let arc = Arc::from_fraction(0.0, 0.5).unwrap();
    let eps = 1e-6;
    for m in [1u32, 10, 100] {
        let v = alpha(&arc, m, Complex64::from_polar(1.0 - eps, arc.midpoint())).unwrap();
        let want = m as f64 * eps / std::f64::consts::PI;
        assert!(((1.0 - v.norm()) / want - 1.0).abs() < 1e-3, "{m}");
    }
}

#[test]
fn moments_against_direct_quadrature() {
    // Direct midpoint-free quadrature of (α*)^k over the arc on 2^16 angles.
    let arc = Arc::from_fraction(1.1, 0.5).unwrap();
    let n = 1 << 16;
    for m in [10u32, 50] {
        let mo = alpha_moments(&arc, m, 3);
        for (k, mk) in mo.iter().enumerate() {
            let mut acc = c(0.0, 0.0);
            for i in 0..n {
                let t = std::f64::consts::TAU * (i as f64 + 0.5) / n as f64;
                if arc.contains(t) {
                    acc += alpha_boundary(&arc, m, t).unwrap().powi(k as i32);
                }
            }
            acc /= n as f64;
            assert!((acc - mk).norm() < 2e-3, "m={m} k={k}: {acc} vs {mk}");
        }
    }
}

#[test]
fn moments_match_the_strip_fourier_transform() {
    // ∫ e^{iωy} sin(πa)/(2(cosh πy + cos πa)) dy = sinh(ωa)/sinh(ω).
    let a = 0.5;
    let arc = Arc::from_fraction(2.0, a).unwrap();
    for m in [1u32, 3, 10] {
        let mo = alpha_moments(&arc, m, 5);
        for (k, mk) in mo.iter().enumerate().skip(1) {
            let w = (k as u32 * m) as f64;
            let want = (w * a).sinh() / w.sinh();
            assert!(
                (mk.re - want).abs() < 1e-12 && mk.im.abs() < 1e-15,
                "{m} {k}: {mk} vs {want}"
            );
        }
    }
}

#[test]
fn g_class_examples() {
    let (_, rep) = ball_disc(&[c(2.0, 0.0)], &[c(0.0, 0.0)], 1.0).unwrap();
    assert!(rep.passes && rep.max_ratio < 1.0 + 1e-12);
    // Off-center balls: the measured ratio stays below the square root of
    // the radius bound.
    let cen = [c(0.3, 0.2)];
    let (_, rep) = ball_disc(&[c(2.0, 1.0)], &cen, 0.5).unwrap();
    let bound = szlab::glue::radius_condition_value(&cen, 0.5).sqrt();
    assert!(rep.max_ratio <= bound + 1e-9, "{} > {bound}", rep.max_ratio);
    assert!(rep.max_ratio > 1.0 + 1e-3);
    assert!(rep.radius_condition == Some(true) && rep.passes);

    // (1, M(1 + z)/2) has norm ranging over [1, √(1 + M²)] on the circle.
    let m = 10.0;
    let d = ClosedPolyDisc::new(vec![vec![c(m / 2.0, 0.0), c(m / 2.0, 0.0)]])
        .unwrap()
        .lifted();
    let rep = g_class_check(&d);
    assert!((rep.max_ratio - (1.0f64 + m * m).sqrt()).abs() < 1e-6);
    assert!(!rep.passes);
}

#[test]
fn radius_condition_fails_for_far_balls() {
    // Centered balls always satisfy the condition.
    assert_eq!(szlab::glue::radius_condition_value(&[c(0.0, 0.0)], 50.0), 1.0);
    let (_, rep) = ball_disc(&[c(9.0, 1.0)], &[c(3.0, 0.0)], 2.0).unwrap();
    assert_eq!(rep.radius_condition, Some(false));
    assert!(rep.max_ratio <= szlab::glue::radius_condition_value(&[c(3.0, 0.0)], 2.0).sqrt());
    assert_eq!(rep.passes, rep.max_ratio < 2.0);
}

#[test]
fn single_full_arc_constant_spec_is_exact_zero() {
    let x = SetGeometry::ball(vec![c(0.0, 0.0)], 1.0).unwrap();
    let base = ClosedPolyDisc::constant(&[c(0.3, 0.1)]);
    let plan = szlab::glue::PartitionPlan {
        arcs: vec![Arc::full()],
        anchors: vec![0.0],
        attach: vec![szlab::glue::Attach::Constant(0)],
        cost: 0.0,
    };
    let spec = plan_to_spec(
        &base,
        &plan,
        &[AttachBall {
            center: vec![c(0.0, 0.0)],
            radius: 1.0,
        }],
        4,
    )
    .unwrap();
    let b = gluing_upper_bound(&spec, &x, 1 << 10).unwrap();
    assert_eq!(b.bound, 0.0);
    assert!(b.valid);
}

#[test]
fn glued_center_is_the_base_center() {
    let base = ClosedPolyDisc::new(vec![vec![c(2.0, 0.0), c(1.2, 0.0)]]).unwrap();
    let balls = attach_balls(0.9999);
    let plan = optimal_partition(&base, &balls, 8, 64);
    let spec = plan_to_spec(&base, &plan, &balls, 8).unwrap();
    let g = glue(&spec).unwrap();
    let v = g.eval(c(0.0, 0.0));
    assert!((v[0] - c(1.0, 0.0)).norm() < 1e-10 && (v[1] - c(2.0, 0.0)).norm() < 1e-10);
}

#[test]
fn two_disc_gluing_beats_a_single_ball() {
    let x = two_discs();
    let balls = attach_balls(1.0 - 1e-4);
    let base = ClosedPolyDisc::new(vec![vec![c(2.0, 0.0), c(1.2, 0.0)]]).unwrap();
    for plan in [
        optimal_partition(&base, &balls, 8, 64),
        cluster_partition(&base, &balls, 8, 256),
    ] {
        let spec = plan_to_spec(&base, &plan, &balls, 16).unwrap();
        let (spec, b) = escalate(&spec, &x, 1 << 12, 1 << 12).unwrap();
        assert!(b.valid, "{b:?}");
        assert!(b.bound < 2f64.ln() - 0.05, "{}", b.bound);
        assert!((b.bound - b.comparison).abs() < 0.05, "{} vs {}", b.bound, b.comparison);
        assert!(b.bound > 0.0944 - 0.05);
        let back: GluingSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
    }
}

#[test]
fn constant_base_two_arcs_converges_to_attached_circles() {
    let x = two_discs();
    let balls = attach_balls(1.0 - 1e-4);
    let base = ClosedPolyDisc::constant(&[c(2.0, 0.0)]);
    let plan = cluster_partition(&base, &balls, 2, 64);
    let mut last = f64::INFINITY;
    for m in [4u32, 16, 64] {
        let spec = plan_to_spec(&base, &plan, &balls, m).unwrap();
        let b = gluing_upper_bound(&spec, &x, 1 << 12).unwrap();
        assert!(b.max_attached_distance < last);
        last = b.max_attached_distance;
    }
    assert!(last < 1e-6, "{last}");
}
