//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured figure (run with `--nocapture` to see them).

use adscurve::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SQRT2: f64 = std::f64::consts::SQRT_2;

fn tols() -> Tolerances {
    Tolerances::default()
}

fn sample(name: &str, a: f64, b: f64, n: usize) -> FramedCurve {
    CurveSource::from_catalog(name)
        .unwrap()
        .sample(a, b, n, &tols())
        .unwrap()
}

fn pass(criterion: usize, what: &str, measure: f64) {
    println!("[acceptance] criterion {criterion:2} PASS  {what} (worst {measure:.3e})");
}

/// 1. Curvature of the constant-curvature timelike catalog curve equals
///    (1, 1, 3/sqrt2, 0) at 201 samples on [-1, 1] within 1e-8.
#[test]
fn criterion_01_timelike_curvature() {
    let fc = sample("timelike-example", -1.0, 1.0, 201);
    let cq = framed_curvature(&fc);
    let mut worst = 0.0f64;
    for i in 0..fc.len() {
        worst = worst.max((cq.alpha[i] - 1.0).abs());
        worst = worst.max((cq.ell[i] - 1.0).abs());
        worst = worst.max((cq.m[i] - 3.0 / SQRT2).abs());
        worst = worst.max(cq.n[i].abs());
    }
    assert!(worst < 1e-8, "max curvature error {worst:.3e}");
    pass(1, "timelike curvature (1, 1, 3/sqrt2, 0)", worst);
}

// closed forms of the spacelike example's curvature, used as the oracle
fn spacelike_curvature_closed(s: f64) -> [f64; 4] {
    let (s2, s3) = (s * s, s * s * s);
    let (s4, s6) = (s2 * s2, s3 * s3);
    let c = (1.0 + s4).sqrt();
    let e = (1.0 + s6).sqrt();
    let a8 = 8.0 + 18.0 * s2 + s6;
    let b4 = 4.0 + 9.0 * s2 + 13.0 * s6;
    [
        s * b4.sqrt() / (SQRT2 * c * e),
        6.0 * SQRT2 * s2 * (2.0 - 3.0 * s2 - s6) / (a8 * b4.sqrt()),
        (12.0 + 16.0 * s4 + 21.0 * s6 + 25.0 * s4 * s6) / (SQRT2 * c * e * a8.sqrt() * b4.sqrt()),
        s * (-16.0 + 30.0 * s2 + 81.0 * s4 + 58.0 * s6 + 102.0 * s4 * s4 + 65.0 * s6 * s6)
            / (c * e * a8.sqrt() * b4),
    ]
}

/// 2. Curvature of the singular spacelike catalog curve matches its printed
///    closed forms within 1e-7 relative at 201 samples on [-1, 1], and the
///    singular-parameter detector returns exactly {0} within 1e-10.
#[test]
fn criterion_02_spacelike_curvature_and_singular_set() {
    let fc = sample("spacelike-example", -1.0, 1.0, 201);
    let cq = framed_curvature(&fc);
    let mut worst = 0.0f64;
    for (i, &s) in fc.s.iter().enumerate() {
        let expect = spacelike_curvature_closed(s);
        for (got, want) in [cq.alpha[i], cq.ell[i], cq.m[i], cq.n[i]].iter().zip(expect) {
            // relative error with an absolute floor of 1 for near-zero values
            let rel = (got - want).abs() / want.abs().max(1.0);
            worst = worst.max(rel);
        }
    }
    assert!(worst < 1e-7, "max relative curvature error {worst:.3e}");
    let singular = singular_parameters(&cq, &tols());
    assert_eq!(singular.len(), 1, "singular set {singular:?}");
    assert!(singular[0].abs() < 1e-10, "singular parameter {:.3e}", singular[0]);
    pass(2, "spacelike curvature closed forms; singular set {0}", worst);
}

fn closed_form_evolute(s: f64) -> Vec4R22 {
    let c7 = 7.0f64.sqrt();
    Vec4R22::new(
        2.0 * SQRT2 / c7 * (s / SQRT2).cosh(),
        ((SQRT2 * s).cosh() + SQRT2 * (SQRT2 * s).sinh()) / c7,
        2.0 * SQRT2 / c7 * (s / SQRT2).sinh(),
        ((SQRT2 * s).sinh() + SQRT2 * (SQRT2 * s).cosh()) / c7,
    )
}

fn timelike_evolute_setup(n: usize) -> (FramedCurve, AdaptedFrameData, EvoluteOutput) {
    let fc = sample("timelike-example", -1.0, 1.0, n);
    let ad = adapted_frame(&fc, &tols()).unwrap();
    let out = evolute(&fc, &ad, &EvoluteOptions::default(), &tols()).unwrap();
    (fc, ad, out)
}

/// 3. The AdS-evolute of the timelike example matches its closed form
///    pointwise within 1e-8 on [-1, 1], and every sample lies on AdS^3
///    within 1e-8.
#[test]
fn criterion_03_evolute_reproduction() {
    let (fc, _, out) = timelike_evolute_setup(201);
    assert_eq!(out.samples.len(), fc.len());
    let mut worst = 0.0f64;
    for sm in &out.samples {
        worst = worst.max((sm.point - closed_form_evolute(sm.s)).flat_norm());
        worst = worst.max((inner(sm.point, sm.point) + 1.0).abs());
    }
    assert!(worst < 1e-8, "max evolute deviation {worst:.3e}");
    pass(3, "evolute closed form and AdS membership", worst);
}

/// 4. The evolute curvature equals -sqrt(14)/7 within 1e-8 by three routes:
///    closed form, compact form, and finite-difference projection of the
///    evolute samples onto mu_E.
#[test]
fn criterion_04_evolute_curvature_three_routes() {
    let (fc, ad, out) = timelike_evolute_setup(201);
    let frame = evolute_frame(&fc, &ad, &out, &tols()).unwrap();
    let expect = -(14.0f64).sqrt() / 7.0;
    let mut worst = 0.0f64;
    for v in &frame.alpha_e {
        worst = worst.max((v - expect).abs());
    }
    let compact = alpha_evolute_compact(&fc, &ad, &tols()).unwrap();
    for v in &compact {
        worst = worst.max((v - expect).abs());
    }
    // projection route: 4th-order finite differences of the evolute samples
    let h = fc.spacing();
    for i in 2..out.samples.len() - 2 {
        let p = |k: i64| out.samples[(i as i64 + k) as usize].point;
        let deriv = (p(-2) - p(-1).scale(8.0) + p(1).scale(8.0) - p(2)).scale(1.0 / (12.0 * h));
        let mu_e = frame.mu_e[i];
        let proj = inner(deriv, mu_e) / inner(mu_e, mu_e);
        worst = worst.max((proj - expect).abs());
    }
    assert!(worst < 1e-8, "max alpha_E route deviation {worst:.3e}");
    pass(4, "alpha_E = -sqrt(14)/7 by three routes", worst);
}

/// 5. The F3 singular locus of the timelike example is theta0 = 0, its image
///    coincides with the evolute within 1e-8, and every locus point is a
///    cuspidal edge.
#[test]
fn criterion_05_focal_locus_is_evolute() {
    let fc = sample("timelike-example", -1.0, 1.0, 201);
    let ad = adapted_frame(&fc, &tols()).unwrap();
    let out = evolute(&fc, &ad, &EvoluteOptions::default(), &tols()).unwrap();
    let locus = focal_singular_locus(&fc, &ad, FocalCase::F3, &tols()).unwrap();
    assert_eq!(locus.len(), fc.len());
    let mut worst = 0.0f64;
    for (i, p) in locus.iter().enumerate() {
        let th = p.theta0.expect("real fiber");
        assert!(th.abs() < 1e-9, "theta0 = {th:.3e}");
        assert_eq!(p.class, SingularClass::CuspidalEdge);
        let img = focal_point(&fc, &ad, FocalCase::F3, i, th).unwrap();
        let ev = out.samples[i].point;
        let dev = (img - ev).flat_norm().min((img + ev).flat_norm());
        worst = worst.max(dev).max(th.abs());
    }
    assert!(worst < 1e-8, "max locus deviation {worst:.3e}");
    pass(5, "F3 locus at theta0 = 0 equals the evolute, all cuspidal edges", worst);
}

fn paper_init() -> FrameMatrix {
    FrameMatrix::from_rows([
        Vec4R22::new(SQRT2, 1.0, 0.0, SQRT2),
        Vec4R22::new(1.0, SQRT2, 0.0, 2.0),
        Vec4R22::new(0.0, -SQRT2, -SQRT2, -1.0),
        Vec4R22::new(0.0, 2.0, 1.0, SQRT2),
    ])
}

/// 6. Reconstructing from the constant curvature (1, 1, 3/sqrt2, 0) with the
///    catalog frame at s = 0 reproduces the curve within 1e-6 on [0, 1] at
///    step 1e-3; the congruence test returns the identity within 1e-6; the
///    orthonormality drift stays below 1e-10 without renormalization.
#[test]
fn criterion_06_reconstruction_uniqueness() {
    let spec = CurvatureSpec::constant(CurveKind::Timelike, 1.0, [1.0, 1.0, 3.0 / SQRT2, 0.0]);
    let init = paper_init();
    let rr =
        reconstruct(&spec, &init, init.row(0), (0.0, 1.0), 1001, false, &tols()).unwrap();
    let reference = sample("timelike-example", 0.0, 1.0, 1001);
    let mut worst = 0.0f64;
    for i in 0..rr.curve.len() {
        worst = worst.max((rr.curve.gamma(i) - reference.gamma(i)).flat_norm());
    }
    assert!(worst < 1e-6, "max curve deviation {worst:.3e}");
    let a = congruence_find(&rr.curve, &reference, &tols())
        .unwrap()
        .expect("congruent by uniqueness");
    let mut id_dev = 0.0f64;
    for i in 0..4 {
        id_dev = id_dev.max((a.row(i) - FrameMatrix::identity().row(i)).flat_norm());
    }
    assert!(id_dev < 1e-6, "identity deviation {id_dev:.3e}");
    let (orth, _) = drift_report(&rr);
    assert!(orth < 1e-10, "orthonormality drift {orth:.3e}");
    pass(6, "reconstruction matches the curve; congruence is the identity", worst.max(orth));
}

fn random_field(rng: &mut ChaCha8Rng) -> ScalarField {
    let c0 = rng.gen_range(-0.8..0.8);
    let c1 = rng.gen_range(-0.8..0.8);
    let c2 = rng.gen_range(-0.8..0.8);
    let p1 = rng.gen_range(0.0..std::f64::consts::TAU);
    let p2 = rng.gen_range(0.0..std::f64::consts::TAU);
    ScalarField::analytic(move |s| (s + p1).sin() * c1 + (s * 2.0 + p2).cos() * c2 + c0)
}

/// 7. Conservation suite: on 10 seeded random smooth curvature specs, the
///    row-Gram drift and |det F - 1| stay below 1e-8 per unit length at step
///    1e-3, and curvature extraction reproduces each spec within 1e-6.
#[test]
fn criterion_07_conservation_suite() {
    let init = FrameMatrix::from_rows([
        Vec4R22::new(1.0, 0.0, 0.0, 0.0),
        Vec4R22::basis(3),
        Vec4R22::basis(4),
        Vec4R22::new(0.0, 1.0, 0.0, 0.0),
    ]);
    let mut worst_drift = 0.0f64;
    let mut worst_round = 0.0f64;
    for seed in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(42 + seed);
        let spec = CurvatureSpec {
            kind: CurveKind::Timelike,
            eps: 1.0,
            alpha: random_field(&mut rng),
            ell: random_field(&mut rng),
            m: random_field(&mut rng),
            n: random_field(&mut rng),
        };
        let rr =
            reconstruct(&spec, &init, init.row(0), (0.0, 1.0), 1001, false, &tols()).unwrap();
        let (orth, det) = drift_report(&rr);
        assert!(orth < 1e-8, "seed {seed}: gram drift {orth:.3e}");
        assert!(det < 1e-8, "seed {seed}: det drift {det:.3e}");
        worst_drift = worst_drift.max(orth).max(det);
        let cq = framed_curvature(&rr.curve);
        for (i, &s) in rr.curve.s.iter().enumerate() {
            let sj = adscurve::Jet::var(s);
            let expect = [
                match &spec.alpha { ScalarField::Analytic(f) => f(sj).val(), _ => unreachable!() },
                match &spec.ell { ScalarField::Analytic(f) => f(sj).val(), _ => unreachable!() },
                match &spec.m { ScalarField::Analytic(f) => f(sj).val(), _ => unreachable!() },
                match &spec.n { ScalarField::Analytic(f) => f(sj).val(), _ => unreachable!() },
            ];
            for (got, want) in [cq.alpha[i], cq.ell[i], cq.m[i], cq.n[i]].iter().zip(expect) {
                worst_round = worst_round.max((got - want).abs());
            }
        }
    }
    assert!(worst_round < 1e-6, "round trip error {worst_round:.3e}");
    pass(7, "conservation and curvature round trip on 10 random specs", worst_drift.max(worst_round));
}

/// 8. Invariance suite: the evolute is invariant under reparametrization and
///    under passing to parallels, on both catalog examples.
#[test]
fn criterion_08_invariance_suite() {
    // parallel invariance, 1e-9 pointwise with a consistent sign branch
    let mut worst_par = 0.0f64;
    let cases = [("timelike-example", -0.8, 0.8), ("spacelike-example", -0.4, 0.4)];
    for (name, a, b) in cases {
        let fc = sample(name, a, b, 81);
        let ad = adapted_frame(&fc, &tols()).unwrap();
        let base = evolute(&fc, &ad, &EvoluteOptions::default(), &tols()).unwrap();
        for phi in [0.3, 1.0] {
            let pp = ParallelParams {
                phi,
                ..Default::default()
            };
            let par = parallel_curve(&fc, &pp, &tols()).unwrap();
            let pad = adapted_frame(&par, &tols()).unwrap();
            let pout = evolute(&par, &pad, &EvoluteOptions::default(), &tols()).unwrap();
            assert_eq!(pout.samples.len(), base.samples.len());
            for (x, y) in base.samples.iter().zip(&pout.samples) {
                let dev = (x.point - y.point)
                    .flat_norm()
                    .min((x.point + y.point).flat_norm());
                assert!(dev < 1e-9, "{name} phi={phi}: deviation {dev:.3e} at s={}", x.s);
                worst_par = worst_par.max(dev);
            }
        }
    }
    // parametrization invariance through u(s) = s^3/3 + s, 1e-6 as matched
    // point sets
    let mut worst_rep = 0.0f64;
    let cases = [("timelike-example", 0.7), ("spacelike-example", 0.35)];
    for (name, half) in cases {
        let u = |s: f64| s * s * s / 3.0 + s;
        let rep = CurveSource::from_catalog(name)
            .unwrap()
            .reparametrize(|s| s * s * s / 3.0 + s)
            .sample(-half, half, 81, &tols())
            .unwrap();
        let rad = adapted_frame(&rep, &tols()).unwrap();
        let rout = evolute(&rep, &rad, &EvoluteOptions::default(), &tols()).unwrap();
        // original evolute evaluated at the matched parameters u(s_i)
        let grid: Vec<f64> = rep.s.iter().map(|&s| u(s)).collect();
        let orig = CurveSource::from_catalog(name)
            .unwrap()
            .sample_at(&grid, &tols())
            .unwrap();
        let oad = adapted_frame(&orig, &tols()).unwrap();
        let oout = evolute(&orig, &oad, &EvoluteOptions::default(), &tols()).unwrap();
        assert_eq!(rout.samples.len(), oout.samples.len());
        for (x, y) in rout.samples.iter().zip(&oout.samples) {
            let dev = (x.point - y.point)
                .flat_norm()
                .min((x.point + y.point).flat_norm());
            assert!(dev < 1e-6, "{name}: deviation {dev:.3e} at s={}", x.s);
            worst_rep = worst_rep.max(dev);
        }
    }
    assert!(worst_par < 1e-9 && worst_rep < 1e-6);
    pass(8, "parallel and parametrization invariance of the evolute", worst_par.max(worst_rep));
}

fn hopf_closed_form(s: f64) -> [f64; 3] {
    let (s2, s3) = (s * s, s * s * s);
    let c = (1.0 + s2 * s2).sqrt();
    let e = (1.0 + s3 * s3).sqrt();
    [
        0.5 * s2 * (c + s * e),
        0.5 * s2 * (s * c - e),
        0.5 * (1.0 + s2 * s2 + s3 * s3),
    ]
}

/// 9. Hopf figures: the projection table of the spacelike example matches
///    the printed closed form within 1e-10, and every exported Hopf point
///    satisfies the quadric within 1e-10. The curve and evolute tables of
///    both examples are written together with gnuplot scripts.
#[test]
fn criterion_09_hopf_figures() {
    let mut worst = 0.0f64;
    let fc = sample("spacelike-example", -1.0, 1.0, 201);
    for (i, &s) in fc.s.iter().enumerate() {
        let h = hopf_project(fc.gamma(i), tols().hopf).unwrap();
        let expect = hopf_closed_form(s);
        worst = worst.max((h.y1 - expect[0]).abs());
        worst = worst.max((h.y2 - expect[1]).abs());
        worst = worst.max((h.y3 - expect[2]).abs());
        worst = worst.max(h.quadric_residual());
    }
    assert!(worst < 1e-10, "figure-1 data deviation {worst:.3e}");

    // figures 2 and 3: evolute projections for both examples, through the
    // same pipeline the CLI uses
    for (name, a, b) in [("spacelike-example", -0.4, 0.4), ("timelike-example", -1.0, 1.0)] {
        let fc = sample(name, a, b, 201);
        let ad = adapted_frame(&fc, &tols()).unwrap();
        let out = evolute(&fc, &ad, &EvoluteOptions::default(), &tols()).unwrap();
        for sm in &out.samples {
            let h = hopf_project(sm.point, tols().hopf).unwrap();
            worst = worst.max(h.quadric_residual());
        }
    }
    assert!(worst < 1e-10, "hopf quadric residual {worst:.3e}");

    // end to end through the CLI exporters: data + gnuplot script
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig1.csv");
    let cli = <adscurve::cli::Cli as clap::Parser>::try_parse_from([
        "adscurve",
        "hopf",
        "--curve",
        "spacelike-example",
        "--range",
        "-1:1",
        "--samples",
        "201",
        "--out",
        out.to_str().unwrap(),
    ])
    .unwrap();
    adscurve::cli::run(cli).unwrap();
    let text = std::fs::read_to_string(&out).unwrap();
    let mid: Vec<f64> = text
        .lines()
        .nth(101)
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    // s = 0 row is (0, 0, 0, 0.5)
    assert!(mid[0].abs() < 1e-15 && mid[1].abs() < 1e-15 && mid[2].abs() < 1e-15);
    assert!((mid[3] - 0.5).abs() < 1e-15);
    assert!(dir.path().join("fig1.csv.gp").exists(), "gnuplot script");
    pass(9, "hopf projection closed form, quadric, and figure export", worst);
}

/// 10. Height discriminants: the secondary discriminant coincides with the
///     evolute within 1e-8, and the height triple vanishes within 1e-8 at
///     v = E(s0), for 20 sampled parameters.
#[test]
fn criterion_10_height_discriminants() {
    let fc = sample("timelike-example", -1.0, 1.0, 20);
    let ad = adapted_frame(&fc, &tols()).unwrap();
    let out = evolute(&fc, &ad, &EvoluteOptions::default(), &tols()).unwrap();
    let theta: Vec<f64> = (0..9).map(|k| -1.0 + 0.25 * k as f64).collect();
    let sets = discriminant_scan(&fc, &ad, HeightKind::AdsTimelike, &theta, &tols()).unwrap();
    assert_eq!(sets.d2.len(), 20);
    let mut worst = 0.0f64;
    for ((_, v), sm) in sets.d2.iter().zip(&out.samples) {
        let dev = (*v - sm.point).flat_norm().min((*v + sm.point).flat_norm());
        assert!(dev < 1e-8, "secondary discriminant deviation {dev:.3e}");
        worst = worst.max(dev);
        let chk =
            height_check(&fc, &ad, sm.point, sm.s, HeightKind::AdsTimelike, &tols()).unwrap();
        for r in [chk.h, chk.h_s, chk.h_ss] {
            assert!(r.abs() < 1e-8, "height triple {r:.3e}");
            worst = worst.max(r.abs());
        }
    }
    pass(10, "secondary discriminant equals the evolute; height triple vanishes", worst);
}
