use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;
use szlab::boundary::{
    blaschke_eval, conjugate_grid, harmonic_measure_arc, measure_join, measure_meet, poisson_value, singular_eval, Arc,
    AtomicMeasure, BlaschkeData, BoundaryGrid, OuterSpec,
};
use szlab::disc::{
    boundary_samples, check_boundary_in, lift, ClosedPolyDisc, FactoredComponent, FactoredDisc, LiftedDisc, SetGeometry,
};
use szlab::functionals::{i_of, i_quadrature, j_of, nu_of};
use szlab::glue::{alpha, cluster_partition, glue, gluing_upper_bound, plan_to_spec, AttachBall, GluingSpec};
use szlab::io::{from_json, to_json, DiscFile};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn inside(max_r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..max_r, 0.0..TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

/// Atoms on the 16-angle lattice with dyadic masses.
fn lattice_measure() -> impl Strategy<Value = AtomicMeasure> {
    prop::collection::btree_map(0usize..16, 1u32..16, 0..4)
        .prop_map(|m| AtomicMeasure::new(m.into_iter().map(|(k, q)| (TAU * k as f64 / 16.0, q as f64 / 8.0))).unwrap())
}

fn blaschke() -> impl Strategy<Value = BlaschkeData> {
    prop::collection::vec((inside(0.9), 1u32..3), 0..3).prop_map(|z| BlaschkeData::new(z).unwrap())
}

/// `s·(1 + pζ)/(1 + qζ)` with `|p|, |q| < 0.9`.
fn rational_outer() -> impl Strategy<Value = OuterSpec> {
    (inside(0.9), inside(0.9), 0.5..2.0, 0.0..TAU).prop_map(|(p, q, r, t)| {
        let s = Complex64::from_polar(r, t);
        OuterSpec::rational(vec![s, s * p], vec![c(1.0, 0.0), q]).unwrap()
    })
}

fn bounded_component(singular: bool) -> impl Strategy<Value = FactoredComponent> {
    (blaschke(), rational_outer(), lattice_measure()).prop_map(move |(b, h, mu)| {
        FactoredComponent::new(
            b,
            h,
            if singular { mu } else { AtomicMeasure::empty() },
            AtomicMeasure::empty(),
        )
        .unwrap()
    })
}

fn lifted_disc(singular: bool) -> impl Strategy<Value = LiftedDisc> {
    prop::collection::vec(bounded_component(singular), 2..4).prop_map(|v| LiftedDisc::new(v).unwrap())
}

/// Numerator and denominator atoms drawn on disjoint halves of the lattice.
fn nevanlinna_component() -> impl Strategy<Value = FactoredComponent> {
    (
        blaschke(),
        rational_outer(),
        lattice_measure(),
        lattice_measure(),
        any::<bool>(),
    )
        .prop_map(|(b, h, s, t, flip)| {
            let keep = |m: &AtomicMeasure, even: bool| {
                AtomicMeasure::new(
                    m.atoms()
                        .iter()
                        .copied()
                        .filter(|&(a, _)| (((a * 16.0 / TAU).round() as i64) % 2 == 0) == even),
                )
                .unwrap()
            };
            FactoredComponent::new(b, h, keep(&s, flip), keep(&t, !flip)).unwrap()
        })
}

fn factored_disc() -> impl Strategy<Value = FactoredDisc> {
    prop::collection::vec(nevanlinna_component(), 1..4).prop_map(|v| FactoredDisc::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn conjugate_is_exact_on_trigonometric_polynomials(coeffs in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..=64)) {
        let n = 256;
        let u = BoundaryGrid::from_fn(n, |t| coeffs.iter().enumerate().map(|(k, (a, b))| {
            let k = (k + 1) as f64;
            a * (k * t).cos() + b * (k * t).sin()
        }).sum()).unwrap();
        let v = conjugate_grid(&u);
        for j in 0..n {
            let t = u.angle(j);
            let want: f64 = coeffs.iter().enumerate().map(|(k, (a, b))| {
                let k = (k + 1) as f64;
                a * (k * t).sin() - b * (k * t).cos()
            }).sum();
            prop_assert!((v.samples()[j] - want).abs() <= 1e-10);
        }
    }

    #[test]
    fn outer_functions_have_the_mean_value_property(h in rational_outer(), logs in prop::collection::vec(-2.0..2.0f64, 64)) {
        let n = 1 << 12;
        let mean_log = |vals: &[Complex64]| vals.iter().map(|v| v.norm().ln()).sum::<f64>() / vals.len() as f64;
        prop_assert!((h.value_at_zero().norm().ln() - mean_log(&h.boundary_values(n))).abs() <= 1e-9);
        let g = OuterSpec::grid(BoundaryGrid::new(logs.clone()).unwrap());
        let mean = logs.iter().sum::<f64>() / logs.len() as f64;
        prop_assert!((g.value_at_zero().norm().ln() - mean).abs() <= 1e-9);
    }

    #[test]
    fn blaschke_products_are_unimodular_on_the_circle(b in blaschke()) {
        for k in 0..(1 << 12) {
            let z = Complex64::from_polar(1.0, TAU * k as f64 / 4096.0);
            let m = blaschke_eval(&b, z * (1.0 - 1e-13)).unwrap().norm();
            prop_assert!((m - 1.0).abs() <= 1e-10, "{}", m);
        }
    }

    #[test]
    fn singular_functions_approach_the_circle(mu in lattice_measure(), k in 0usize..4096) {
        let theta = TAU * (k as f64 + 0.5) / 4096.0;
        let m = singular_eval(&mu, Complex64::from_polar(1.0 - 1e-6, theta)).unwrap().norm();
        prop_assert!(m > 0.0 && m < 1.0 || mu.is_empty());
        let trend: Vec<f64> = (2..=6)
            .map(|e| singular_eval(&mu, Complex64::from_polar(1.0 - 10f64.powi(-e), theta)).unwrap().norm())
            .collect();
        prop_assert!(trend.windows(2).all(|w| w[1] >= w[0] - 1e-15), "{:?}", trend);
    }

    #[test]
    fn lattice_laws(a in lattice_measure(), b in lattice_measure(), d in lattice_measure()) {
        let j = |x: &AtomicMeasure, y: &AtomicMeasure| measure_join(&[x.clone(), y.clone()]);
        let m = |x: &AtomicMeasure, y: &AtomicMeasure| measure_meet(&[x.clone(), y.clone()]);
        prop_assert_eq!(j(&a, &a), a.clone());
        prop_assert_eq!(m(&a, &a), a.clone());
        prop_assert_eq!(j(&a, &b), j(&b, &a));
        prop_assert_eq!(m(&a, &b), m(&b, &a));
        prop_assert_eq!(j(&j(&a, &b), &d), j(&a, &j(&b, &d)));
        prop_assert_eq!(m(&m(&a, &b), &d), m(&a, &m(&b, &d)));
        prop_assert!(m(&a, &b).total() <= a.total().min(b.total()));
        prop_assert!(j(&a, &b).total() <= a.total() + b.total());
    }

    #[test]
    fn harmonic_measure_matches_the_poisson_integral(start in 0usize..1024, len in 64usize..960, z in inside(0.6)) {
        // Endpoints halfway between samples make the indicator's quadrature
        // second-order accurate.
        let n = 1 << 14;
        let step = TAU / n as f64;
        let lo = (start * 16) as f64 * step + 0.5 * step;
        let arc = Arc::new(lo, lo + (len * 16) as f64 * step).unwrap();
        let u = BoundaryGrid::from_fn(n, |t| if arc.contains(t) { 1.0 } else { 0.0 }).unwrap();
        let (omega, _) = harmonic_measure_arc(&arc, z).unwrap();
        prop_assert!((omega - poisson_value(&u, z).unwrap()).abs() <= 1e-6);
    }

    #[test]
    fn lifting_projects_back(f in factored_disc(), z in inside(0.8)) {
        let l = lift(&f).unwrap();
        let v = l.eval(z);
        for (j, fj) in f.eval(z).iter().enumerate() {
            let r = v[j + 1] / v[0];
            prop_assert!((r - fj).norm() <= 1e-8 * (1.0 + fj.norm()), "{} vs {}", r, fj);
        }
    }

    #[test]
    fn lifted_boundary_never_vanishes(d in lifted_disc(true)) {
        let s = boundary_samples(&d, 1024);
        for v in &s.values {
            prop_assert!(v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt() > 1e-9);
        }
    }

    #[test]
    fn membership_is_monotone_in_tolerance(center in inside(0.5), r in 0.5..1.5f64, t1 in 0.0..0.2f64, t2 in 0.0..0.2f64) {
        let d = ClosedPolyDisc::new(vec![vec![center, c(0.7, 0.2)]]).unwrap();
        let x = SetGeometry::ball(vec![c(0.0, 0.0)], r).unwrap();
        let (lo, hi) = (t1.min(t2), t1.max(t2));
        let a = check_boundary_in(&d, &x.with_tolerance(lo).unwrap(), 1024);
        let b = check_boundary_in(&d, &x.with_tolerance(hi).unwrap(), 1024);
        prop_assert!(b.fraction_inside <= a.fraction_inside);
    }

    #[test]
    fn rational_boundary_samples_match_direct_evaluation(b in blaschke(), h in rational_outer()) {
        let comp = FactoredComponent::bounded(b.clone(), h.clone());
        let d = LiftedDisc::new(vec![FactoredComponent::constant(c(1.0, 0.0)), comp]).unwrap();
        let s = boundary_samples(&d, 512);
        for (t, v) in s.angles.iter().zip(&s.values) {
            let z = Complex64::from_polar(1.0, *t);
            let direct = b.eval(z) * h.eval(z);
            prop_assert!((v[1] - direct).norm() <= 1e-8 * (1.0 + direct.norm()));
        }
    }

    #[test]
    fn j_never_exceeds_i(d in lifted_disc(true)) {
        prop_assert!(j_of(&d).unwrap().value <= i_of(&d).unwrap().value);
    }

    #[test]
    fn i_equals_j_without_singular_numerators(d in lifted_disc(false)) {
        prop_assert_eq!(j_of(&d).unwrap().value, i_of(&d).unwrap().value);
    }

    #[test]
    fn nu_is_i_of_the_lift(f in factored_disc()) {
        prop_assert_eq!(nu_of(&f).value, i_of(&lift(&f).unwrap()).unwrap().value);
    }

    #[test]
    fn i_ignores_common_inner_factors(d in lifted_disc(true), a in inside(0.9), k in 0usize..16, phase in 0.0..TAU) {
        let before = i_of(&d).unwrap().value;
        let b = BlaschkeData::new([(a, 1)]).unwrap();
        let mu = AtomicMeasure::atom(TAU * k as f64 / 16.0, 0.5).unwrap();
        let unit = Complex64::from_polar(1.0, phase);
        let comps = d.components().iter().map(|x| {
            let y = x.times_inner(&b, &mu).unwrap();
            y.with_outer(y.outer().product(&OuterSpec::constant(unit)).unwrap())
        }).collect();
        let after = i_of(&LiftedDisc::new(comps).unwrap()).unwrap().value;
        prop_assert!((after - before).abs() <= 1e-12 * (1.0 + before));
    }

    #[test]
    fn alpha_maps_into_the_disc(start in 0.0..TAU, frac in 0.05..0.95f64, m in 1u32..200, z in inside(0.999)) {
        let arc = Arc::from_fraction(start, frac).unwrap();
        prop_assert!(alpha(&arc, m, z).unwrap().norm() < 1.0);
        let at0 = alpha(&arc, m, c(0.0, 0.0)).unwrap();
        prop_assert!((at0 - (-(m as f64) * (1.0 - frac)).exp()).norm() <= 1e-12);
    }

    #[test]
    fn geometry_and_discs_round_trip(center in inside(3.0), r in 0.1..3.0f64, f in factored_disc(), d in lifted_disc(true)) {
        let x = SetGeometry::planar_balls(&[(center, r), (center + 5.0, r / 2.0)]).unwrap();
        prop_assert_eq!(from_json::<SetGeometry>(&to_json(&x).unwrap()).unwrap(), x);
        for file in [DiscFile::Factored(f), DiscFile::Lifted(d)] {
            prop_assert_eq!(from_json::<DiscFile>(&to_json(&file).unwrap()).unwrap(), file);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn exact_and_quadrature_i_agree(d in lifted_disc(true)) {
        let exact = i_of(&d).unwrap().value;
        let quad = i_quadrature(&d, 1 << 16).unwrap().value;
        prop_assert!((exact - quad).abs() <= 5e-6, "{} vs {}", exact, quad);
    }

    #[test]
    fn glued_discs_start_at_the_base(b1 in inside(1.5), m in 1u32..64) {
        let balls: Vec<AttachBall> = [(c(0.0, 0.0), 1.0), (c(4.0, 0.0), 1.0)]
            .iter()
            .map(|&(z, r)| AttachBall { center: vec![z], radius: r * (1.0 - 1e-4) })
            .collect();
        let base = ClosedPolyDisc::new(vec![vec![c(2.0, 0.0), b1]]).unwrap();
        let spec = plan_to_spec(&base, &cluster_partition(&base, &balls, 4, 128), &balls, m).unwrap();
        let v = glue(&spec).unwrap().eval(c(0.0, 0.0));
        prop_assert!((v[0] - c(1.0, 0.0)).norm() <= 1e-10);
        prop_assert!((v[1] - c(2.0, 0.0)).norm() <= 1e-10);
        let back: GluingSpec = from_json(&to_json(&spec).unwrap()).unwrap();
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn trivial_spec_is_zero_inside(z in inside(0.99)) {
        let x = SetGeometry::ball(vec![c(0.0, 0.0)], 1.0).unwrap();
        let base = ClosedPolyDisc::constant(&[z]);
        let spec = GluingSpec::new(base.clone(), vec![Arc::full()], vec![0.0], vec![base.lifted()], 1).unwrap();
        let b = gluing_upper_bound(&spec, &x, 1 << 10).unwrap();
        prop_assert_eq!(b.bound, 0.0);
        prop_assert!(b.valid);
    }
}
