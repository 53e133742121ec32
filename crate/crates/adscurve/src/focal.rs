//! Focal surfaces of framed immersions, their signed density function,
//! singular-locus extraction, and the cuspidal-edge / swallowtail decision.

use crate::config::Tolerances;
use crate::curve::{jv_scale, jv_shift, jv_sub, jv_val, CurveKind, FramedCurve, JetVec4};
use crate::error::{Error, Result};
use crate::evolute::evolute_frame_jets;
use crate::framing::{AdaptedFrameData, HyperbolicPair};
use crate::jet::Jet;
use crate::metric::{det4_g, inner, PseudoSphere, Vec4R22};

/// Focal-surface family selector with its causal preconditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FocalCase {
    /// Spacelike input, `zeta` and `f1` both timelike; circular combination.
    F1,
    /// Spacelike input, `zeta` and `f1` of opposite character; hyperbolic
    /// combination with an explicit `(P, R)` selector.
    F2(HyperbolicPair),
    /// Timelike input, `zeta` timelike; `cosh/sinh` combination in AdS^3.
    F3,
    /// Timelike input, `zeta` timelike; `sinh/cosh` combination in S^3_2.
    F4,
    /// Timelike input, `zeta` spacelike; circular combination in S^3_2.
    F5,
}

impl std::fmt::Display for FocalCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FocalCase::F1 => write!(f, "f1"),
            FocalCase::F2(HyperbolicPair::CoshSinh) => write!(f, "f2:cosh-sinh"),
            FocalCase::F2(HyperbolicPair::SinhCosh) => write!(f, "f2:sinh-cosh"),
            FocalCase::F3 => write!(f, "f3"),
            FocalCase::F4 => write!(f, "f4"),
            FocalCase::F5 => write!(f, "f5"),
        }
    }
}

/// Per-sample focal data shared by the surface and locus computations.
pub(crate) struct FocalSampleData {
    pub zeta: JetVec4,
    /// `alpha n_hat' - n_hat alpha'`.
    pub d: Jet,
    /// `ell_hat * n_hat`.
    pub ln: Jet,
    /// The zeta normalizer `sqrt(eps_zeta * q)`.
    pub w: Jet,
    pub eps_zeta: f64,
}

pub(crate) fn focal_sample_data(
    fc: &FramedCurve,
    adapted: &AdaptedFrameData,
    i: usize,
) -> Result<FocalSampleData> {
    let aj = &adapted.jets[i];
    let gamma = &fc.sample_jets(i).gamma;
    let (alpha, lhat, nhat) = (aj.alpha, aj.ell_hat, aj.n_hat);
    let q = match fc.kind {
        CurveKind::Spacelike => -(nhat * nhat) - adapted.eps_hat * (alpha * alpha),
        CurveKind::Timelike => alpha * alpha - nhat * nhat,
    };
    let eps_zeta = q.val().signum();
    if q.val().abs() < 1e-14 {
        return Err(Error::GuardViolated {
            s: fc.s[i],
            which: "zeta normalizer vanishes".into(),
        });
    }
    let w = (q * eps_zeta).sqrt();
    let zeta = jv_scale(
        &jv_sub(&jv_scale(gamma, nhat), &jv_scale(&aj.f2, alpha)),
        w.recip(),
    );
    Ok(FocalSampleData {
        zeta,
        d: alpha * nhat.shift() - nhat * alpha.shift(),
        ln: lhat * nhat,
        w,
        eps_zeta,
    })
}

fn check_case_precondition(
    case: FocalCase,
    kind: CurveKind,
    eps_hat: f64,
    eps_zeta: f64,
    s: f64,
) -> Result<()> {
    let ok = match (case, kind) {
        (FocalCase::F1, CurveKind::Spacelike) => eps_zeta * eps_hat > 0.0,
        (FocalCase::F2(_), CurveKind::Spacelike) => eps_zeta * eps_hat < 0.0,
        (FocalCase::F3 | FocalCase::F4, CurveKind::Timelike) => eps_zeta < 0.0,
        (FocalCase::F5, CurveKind::Timelike) => eps_zeta > 0.0,
        _ => {
            return Err(Error::CasePreconditionViolated {
                s,
                what: format!("case {case} does not apply to {kind} input"),
            })
        }
    };
    if !ok {
        return Err(Error::CasePreconditionViolated {
            s,
            what: format!("causal signs (eps_zeta = {eps_zeta}, eps_hat = {eps_hat}) do not match case {case}"),
        });
    }
    Ok(())
}

/// Angular profile of a case: values of the two combination functions.
fn case_profile(case: FocalCase, theta: f64) -> (f64, f64) {
    match case {
        FocalCase::F1 | FocalCase::F5 => (theta.cos(), theta.sin()),
        FocalCase::F3 => (theta.cosh(), theta.sinh()),
        FocalCase::F4 => (theta.sinh(), theta.cosh()),
        FocalCase::F2(HyperbolicPair::CoshSinh) => (theta.cosh(), theta.sinh()),
        FocalCase::F2(HyperbolicPair::SinhCosh) => (theta.sinh(), theta.cosh()),
    }
}

/// Derivative of the angular profile with respect to theta.
fn case_profile_deriv(case: FocalCase, theta: f64) -> (f64, f64) {
    match case {
        FocalCase::F1 | FocalCase::F5 => (-theta.sin(), theta.cos()),
        FocalCase::F3 => (theta.sinh(), theta.cosh()),
        FocalCase::F4 => (theta.cosh(), theta.sinh()),
        FocalCase::F2(HyperbolicPair::CoshSinh) => (theta.sinh(), theta.cosh()),
        FocalCase::F2(HyperbolicPair::SinhCosh) => (theta.cosh(), theta.sinh()),
    }
}

/// An s-theta grid of focal-surface points with the signed density attached.
pub struct FocalGrid {
    pub case: FocalCase,
    pub s: Vec<f64>,
    pub theta: Vec<f64>,
    /// Row-major `s` x `theta` points.
    pub points: Vec<Vec4R22>,
    /// Signed density `det(F, dF/ds, dF/dtheta, mu)` per point.
    pub lambda: Vec<f64>,
    pub sphere: PseudoSphere,
}

impl FocalGrid {
    pub fn point(&self, i: usize, j: usize) -> Vec4R22 {
        self.points[i * self.theta.len() + j]
    }

    pub fn lambda_at(&self, i: usize, j: usize) -> f64 {
        self.lambda[i * self.theta.len() + j]
    }
}

/// Samples a focal surface over the curve grid times a uniform theta grid.
/// Every point is validated against the case's target pseudo-sphere.
pub fn focal_surface(
    fc: &FramedCurve,
    adapted: &AdaptedFrameData,
    case: FocalCase,
    theta_range: (f64, f64),
    n_theta: usize,
    tols: &Tolerances,
) -> Result<FocalGrid> {
    if n_theta < 2 {
        return Err(Error::Domain("need at least 2 theta samples".into()));
    }
    let (t0, t1) = theta_range;
    if !(t0 < t1) {
        return Err(Error::Domain(format!("empty theta range [{t0}, {t1}]")));
    }
    let dt = (t1 - t0) / (n_theta - 1) as f64;
    let theta: Vec<f64> = (0..n_theta).map(|j| t0 + dt * j as f64).collect();
    let mut points = Vec::with_capacity(fc.len() * n_theta);
    let mut lambda = Vec::with_capacity(fc.len() * n_theta);
    let mut sphere: Option<PseudoSphere> = None;
    for i in 0..fc.len() {
        let data = focal_sample_data(fc, adapted, i)?;
        check_case_precondition(case, fc.kind, adapted.eps_hat, data.eps_zeta, fc.s[i])?;
        let zeta_p = jv_shift(&data.zeta);
        let f1 = &adapted.jets[i].f1;
        let f1_p = jv_shift(f1);
        let mu = jv_val(&fc.sample_jets(i).mu);
        let zeta_v = jv_val(&data.zeta);
        let f1_v = jv_val(f1);
        let zeta_pv = jv_val(&zeta_p);
        let f1_pv = jv_val(&f1_p);
        for &th in &theta {
            let (p, r) = case_profile(case, th);
            let (dp, dr) = case_profile_deriv(case, th);
            let point = zeta_v.scale(p) + f1_v.scale(r);
            let ds = zeta_pv.scale(p) + f1_pv.scale(r);
            let dth = zeta_v.scale(dp) + f1_v.scale(dr);
            let det = det4_g(&[
                point.as_array(),
                ds.as_array(),
                dth.as_array(),
                mu.as_array(),
            ]);
            let q = inner(point, point);
            let target = if q < 0.0 {
                PseudoSphere::AdS3
            } else {
                PseudoSphere::S32
            };
            match sphere {
                None => sphere = Some(target),
                Some(t) if t != target => {
                    return Err(Error::MembershipViolated {
                        row: i + 1,
                        what: "focal surface changes target sphere across the grid".into(),
                    })
                }
                _ => {}
            }
            let expect = if target == PseudoSphere::AdS3 { -1.0 } else { 1.0 };
            if (q - expect).abs() > tols.memb {
                return Err(Error::MembershipViolated {
                    row: i + 1,
                    what: format!("focal point has <F,F> = {q}, expected {expect}"),
                });
            }
            points.push(point);
            lambda.push(det);
        }
    }
    Ok(FocalGrid {
        case,
        s: fc.s.clone(),
        theta,
        points,
        lambda,
        sphere: sphere.unwrap(),
    })
}

/// Wavefront singularity classes decided along the singular locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularClass {
    CuspidalEdge,
    Swallowtail,
    /// No decision: the locus fiber has no real angle, the locus point lies
    /// on the PS branch (where no classification criterion is printed), or
    /// both the evolute curvature and its derivative vanish.
    Degenerate,
}

impl std::fmt::Display for SingularClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SingularClass::CuspidalEdge => write!(f, "cuspidal-edge"),
            SingularClass::Swallowtail => write!(f, "swallowtail"),
            SingularClass::Degenerate => write!(f, "degenerate"),
        }
    }
}

/// A focal-surface singular point.
#[derive(Clone, Copy, Debug)]
pub struct SingularLocusPoint {
    pub s0: f64,
    /// The angle solving the density zero; `None` when the tanh relation has
    /// no real solution along this fiber.
    pub theta0: Option<f64>,
    pub class: SingularClass,
    /// AdS-evolute curvature at `s0`, when the locus lies on the AdS branch.
    pub alpha_e: Option<f64>,
    pub alpha_e_prime: Option<f64>,
}

/// Whether the case's theta relation is a tangent (always solvable) or a
/// hyperbolic tangent (solvable only for ratios inside (-1, 1)), and whether
/// the ratio is `-D/(ln w)` (primary) or its reciprocal.
fn case_relation(case: FocalCase) -> (bool, bool) {
    match case {
        FocalCase::F1 | FocalCase::F5 => (false, false),
        FocalCase::F3 | FocalCase::F2(HyperbolicPair::CoshSinh) => (true, false),
        FocalCase::F4 | FocalCase::F2(HyperbolicPair::SinhCosh) => (true, true),
    }
}

fn theta0_from(case: FocalCase, d: f64, ln: f64, w: f64) -> Option<f64> {
    let (hyperbolic, reciprocal) = case_relation(case);
    let ratio = if reciprocal {
        -ln * w / d
    } else {
        -d / (ln * w)
    };
    if hyperbolic {
        if ratio.abs() >= 1.0 || !ratio.is_finite() {
            None
        } else {
            Some(ratio.atanh())
        }
    } else {
        Some(ratio.atan())
    }
}

/// Evaluates the AdS-evolute curvature and its derivative at an offset from
/// sample `i`, honoring the source's jet depth. For depth-limited sources
/// the derivative comes from finite differences of the per-sample values.
fn alpha_e_at(
    fc: &FramedCurve,
    adapted: &AdaptedFrameData,
    i: usize,
    offset: f64,
) -> (f64, f64) {
    let jets = evolute_frame_jets(fc, adapted, i);
    if fc.depth > 3 {
        return (jets.alpha_e.eval(offset), jets.alpha_e.shift().eval(offset));
    }
    // grid finite differences of the sample values
    let n = fc.len();
    let width = 5.min(n);
    let start = i.saturating_sub(width / 2).min(n - width);
    let nodes = &fc.s[start..start + width];
    let vals: Vec<f64> = (start..start + width)
        .map(|k| evolute_frame_jets(fc, adapted, k).alpha_e.val())
        .collect();
    let w = crate::curve::fornberg_weights(fc.s[i] + offset, nodes, 1);
    let mut v = 0.0;
    let mut dv = 0.0;
    for (k, wrow) in w.iter().enumerate() {
        v += wrow[0] * vals[k];
        dv += wrow[1] * vals[k];
    }
    (v, dv)
}

/// Classifies a singular-locus parameter by the evolute-curvature criterion:
/// cuspidal edge iff `|alpha_E| > class tolerance`, swallowtail iff
/// `alpha_E` vanishes there but its derivative does not.
pub fn classify(
    fc: &FramedCurve,
    adapted: &AdaptedFrameData,
    s0: f64,
    tols: &Tolerances,
) -> Result<SingularClass> {
    let i = nearest_index(&fc.s, s0);
    let core = crate::evolute::evolute_core(fc, adapted, i);
    if core.disc.eval(s0 - fc.s[i]) > 0.0 {
        return Ok(SingularClass::Degenerate);
    }
    let (a, ap) = alpha_e_at(fc, adapted, i, s0 - fc.s[i]);
    Ok(if a.abs() > tols.class {
        SingularClass::CuspidalEdge
    } else if ap.abs() > tols.class {
        SingularClass::Swallowtail
    } else {
        SingularClass::Degenerate
    })
}

fn nearest_index(grid: &[f64], s: f64) -> usize {
    let mut best = 0;
    let mut dist = f64::INFINITY;
    for (i, &x) in grid.iter().enumerate() {
        let d = (x - s).abs();
        if d < dist {
            dist = d;
            best = i;
        }
    }
    best
}

/// Extracts the singular locus of a focal family: per-sample angles solving
/// the density zero, classified by the evolute-curvature criterion, plus
/// bisection-refined swallowtail parameters at sign changes of the evolute
/// curvature.
pub fn focal_singular_locus(
    fc: &FramedCurve,
    adapted: &AdaptedFrameData,
    case: FocalCase,
    tols: &Tolerances,
) -> Result<Vec<SingularLocusPoint>> {
    let n = fc.len();
    let mut out: Vec<SingularLocusPoint> = Vec::with_capacity(n);
    let mut ads_alpha: Vec<Option<(usize, f64)>> = Vec::with_capacity(n);
    for i in 0..n {
        let data = focal_sample_data(fc, adapted, i)?;
        check_case_precondition(case, fc.kind, adapted.eps_hat, data.eps_zeta, fc.s[i])?;
        let (d, ln, w) = (data.d.val(), data.ln.val(), data.w.val());
        if d.abs() < tols.sing && ln.abs() < tols.sing {
            return Err(Error::DegenerateDensity { s: fc.s[i] });
        }
        let theta0 = theta0_from(case, d, ln, w);
        let point = match theta0 {
            None => SingularLocusPoint {
                s0: fc.s[i],
                theta0: None,
                class: SingularClass::Degenerate,
                alpha_e: None,
                alpha_e_prime: None,
            },
            Some(th) => {
                let core = crate::evolute::evolute_core(fc, adapted, i);
                if core.disc.val() < 0.0 {
                    let (a, ap) = alpha_e_at(fc, adapted, i, 0.0);
                    ads_alpha.push(Some((i, a)));
                    let class = if a.abs() > tols.class {
                        SingularClass::CuspidalEdge
                    } else if ap.abs() > tols.class {
                        SingularClass::Swallowtail
                    } else {
                        SingularClass::Degenerate
                    };
                    SingularLocusPoint {
                        s0: fc.s[i],
                        theta0: Some(th),
                        class,
                        alpha_e: Some(a),
                        alpha_e_prime: Some(ap),
                    }
                } else {
                    SingularLocusPoint {
                        s0: fc.s[i],
                        theta0: Some(th),
                        class: SingularClass::Degenerate,
                        alpha_e: None,
                        alpha_e_prime: None,
                    }
                }
            }
        };
        out.push(point);
        if ads_alpha.len() < i + 1 {
            ads_alpha.push(None);
        }
    }

    // refine swallowtail parameters at sign changes of alpha_E
    let mut refined: Vec<SingularLocusPoint> = Vec::new();
    for pair in ads_alpha.windows(2) {
        let (Some((i, a)), Some((j, b))) = (pair[0], pair[1]) else {
            continue;
        };
        if j != i + 1 || a == 0.0 || b == 0.0 || a.signum() == b.signum() {
            continue;
        }
        let (mut lo, mut hi) = (fc.s[i], fc.s[j]);
        let mut flo = a;
        for _ in 0..200 {
            if hi - lo <= tols.root {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let anchor = if (mid - fc.s[i]).abs() <= (fc.s[j] - mid).abs() { i } else { j };
            let (fm, _) = alpha_e_at(fc, adapted, anchor, mid - fc.s[anchor]);
            if fm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if fm.signum() == flo.signum() {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        let s_star = 0.5 * (lo + hi);
        let anchor = if (s_star - fc.s[i]).abs() <= (fc.s[j] - s_star).abs() { i } else { j };
        let off = s_star - fc.s[anchor];
        let (a_star, ap_star) = alpha_e_at(fc, adapted, anchor, off);
        if a_star.abs() <= tols.class && ap_star.abs() > tols.class {
            let data = focal_sample_data(fc, adapted, anchor)?;
            let theta0 = theta0_from(
                case,
                data.d.eval(off),
                data.ln.eval(off),
                data.w.eval(off),
            );
            refined.push(SingularLocusPoint {
                s0: s_star,
                theta0,
                class: SingularClass::Swallowtail,
                alpha_e: Some(a_star),
                alpha_e_prime: Some(ap_star),
            });
        }
    }
    out.extend(refined);
    out.sort_by(|a, b| a.s0.total_cmp(&b.s0));
    Ok(out)
}

/// Maps a locus point back through the focal family.
pub fn focal_point(
    fc: &FramedCurve,
    adapted: &AdaptedFrameData,
    case: FocalCase,
    i: usize,
    theta: f64,
) -> Result<Vec4R22> {
    let data = focal_sample_data(fc, adapted, i)?;
    let (p, r) = case_profile(case, theta);
    Ok(jv_val(&data.zeta).scale(p) + jv_val(&adapted.jets[i].f1).scale(r))
}
