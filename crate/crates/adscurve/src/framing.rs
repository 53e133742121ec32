//! Frame constructions along framed curves: the curvature quadruple, singular
//! parameter detection, regular Frenet-type frames, the Bishop-type rotation,
//! the adapted frame with vanishing m-slot, and anti-de Sitter parallels.

use crate::config::Tolerances;
use crate::curve::{
    jinner, jv_add, jv_scale, jv_shift, jv_sub, jv_val, CurveKind, FrameJets, FramedCurve, JetVec4,
};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::metric::{det4_g, Vec4R22};

/// Jets of the curvature quadruple at one sample.
#[derive(Clone, Copy, Debug)]
pub(crate) struct CurvatureJets {
    pub alpha: Jet,
    pub ell: Jet,
    pub m: Jet,
    pub n: Jet,
}

pub(crate) fn curvature_jets(kind: CurveKind, eps: f64, jets: &FrameJets) -> CurvatureJets {
    let gp = jv_shift(&jets.gamma);
    let v1p = jv_shift(&jets.v1);
    let v2p = jv_shift(&jets.v2);
    match kind {
        CurveKind::Spacelike => CurvatureJets {
            alpha: jinner(&gp, &jets.mu),
            ell: -eps * jinner(&v1p, &jets.v2),
            m: jinner(&v1p, &jets.mu),
            n: jinner(&v2p, &jets.mu),
        },
        CurveKind::Timelike => CurvatureJets {
            alpha: -jinner(&gp, &jets.mu),
            ell: jinner(&v1p, &jets.v2),
            m: -jinner(&v1p, &jets.mu),
            n: -jinner(&v2p, &jets.mu),
        },
    }
}

/// The framed curvature `(alpha, ell, m, n)` over the sample grid.
pub struct CurvatureQuad {
    pub s: Vec<f64>,
    pub alpha: Vec<f64>,
    pub ell: Vec<f64>,
    pub m: Vec<f64>,
    pub n: Vec<f64>,
    /// Causal sign of v1 (spacelike kind only; +1 for timelike).
    pub eps: f64,
    pub(crate) jets: Vec<CurvatureJets>,
}

/// Extracts the curvature quadruple from a validated framed curve.
pub fn framed_curvature(fc: &FramedCurve) -> CurvatureQuad {
    let jets: Vec<CurvatureJets> = fc
        .jets
        .iter()
        .map(|j| curvature_jets(fc.kind, fc.eps, j))
        .collect();
    CurvatureQuad {
        s: fc.s.clone(),
        alpha: jets.iter().map(|c| c.alpha.val()).collect(),
        ell: jets.iter().map(|c| c.ell.val()).collect(),
        m: jets.iter().map(|c| c.m.val()).collect(),
        n: jets.iter().map(|c| c.n.val()).collect(),
        eps: fc.eps,
        jets,
    }
}

/// Parameters where `alpha` vanishes, i.e. the singular points of the base
/// curve. Sign changes between samples are refined by bisection on the local
/// Taylor models; samples with `|alpha| < tols.sing` count directly.
pub fn singular_parameters(cq: &CurvatureQuad, tols: &Tolerances) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    let n = cq.s.len();
    let mut push = |s: f64| {
        if !out.iter().any(|&x| (x - s).abs() < 1e-9) {
            out.push(s);
        }
    };
    for i in 0..n {
        if cq.alpha[i].abs() < tols.sing {
            push(cq.s[i]);
        }
    }
    for i in 0..n - 1 {
        let (a, b) = (cq.alpha[i], cq.alpha[i + 1]);
        if a.abs() < tols.sing || b.abs() < tols.sing || a.signum() == b.signum() {
            continue;
        }
        // bisection on the Taylor model anchored at the nearer sample
        let (mut lo, mut hi) = (cq.s[i], cq.s[i + 1]);
        let mid_ref = 0.5 * (lo + hi);
        let anchor = if (mid_ref - cq.s[i]).abs() <= (cq.s[i + 1] - mid_ref).abs() {
            i
        } else {
            i + 1
        };
        let s0 = cq.s[anchor];
        let f = |s: f64| cq.jets[anchor].alpha.eval(s - s0);
        let (mut flo, _fhi) = (f(lo), f(hi));
        if flo == 0.0 {
            push(lo);
            continue;
        }
        for _ in 0..200 {
            if hi - lo <= tols.root {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let fm = f(mid);
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
        push(0.5 * (lo + hi));
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Frenet-type data for regular curves; geodesic samples carry no normal
/// data.
pub struct RegularFrenetData {
    pub s: Vec<f64>,
    /// Unit tangent (arc-length normalized).
    pub t: Vec<Vec4R22>,
    pub kappa_g: Vec<f64>,
    pub n1: Vec<Option<Vec4R22>>,
    pub n2: Vec<Option<Vec4R22>>,
    pub tau_g: Vec<Option<f64>>,
    /// Causal sign of n1 (spacelike curves).
    pub delta: Vec<Option<f64>>,
    pub is_geodesic: Vec<bool>,
}

/// Frenet-type frame of a regular curve. The curve must be regular on the
/// whole grid and its tangent must not change causal character.
pub fn regular_frenet(fc: &FramedCurve, tols: &Tolerances) -> Result<RegularFrenetData> {
    let n = fc.len();
    let mut sign0 = 0.0;
    for i in 0..n {
        let gp = jv_shift(&fc.jets[i].gamma);
        let q = jinner(&gp, &gp).val();
        if q.abs() < tols.sing {
            return Err(Error::NotRegular { s: fc.s[i] });
        }
        if i == 0 {
            sign0 = q.signum();
        } else if q.signum() != sign0 {
            return Err(Error::MixedCausality { s: fc.s[i] });
        }
    }
    let timelike_tangent = sign0 < 0.0;
    let mut data = RegularFrenetData {
        s: fc.s.clone(),
        t: Vec::with_capacity(n),
        kappa_g: Vec::with_capacity(n),
        n1: Vec::with_capacity(n),
        n2: Vec::with_capacity(n),
        tau_g: Vec::with_capacity(n),
        delta: Vec::with_capacity(n),
        is_geodesic: Vec::with_capacity(n),
    };
    for i in 0..n {
        let g = &fc.jets[i].gamma;
        let gp = jv_shift(g);
        let speed = {
            let q = jinner(&gp, &gp);
            (q * sign0).sqrt()
        };
        // arc-length derivative operator: d/d(arc) = (1/speed) d/ds
        let t = jv_scale(&gp, speed.recip());
        let tp_arc = jv_scale(&jv_shift(&t), speed.recip());
        // N1 = T' -/+ gamma (minus for spacelike tangents, plus for timelike)
        let n1raw = if timelike_tangent {
            jv_add(&tp_arc, g)
        } else {
            jv_sub(&tp_arc, g)
        };
        let q1 = jinner(&n1raw, &n1raw).val();
        let kappa = q1.abs().sqrt();
        data.t.push(jv_val(&t));
        data.kappa_g.push(kappa);
        if kappa < tols.sing {
            data.is_geodesic.push(true);
            data.n1.push(None);
            data.n2.push(None);
            data.tau_g.push(None);
            data.delta.push(None);
            continue;
        }
        data.is_geodesic.push(false);
        let delta = q1.signum();
        let n1 = jv_scale(&n1raw, Jet::constant(1.0 / kappa));
        let n2 = crate::curve::jtriple(g, &t, &n1);
        // tau_g from det(gamma, gamma', gamma'', gamma''') in arc length
        let g1 = jv_scale(&gp, speed.recip());
        let g2 = jv_scale(&jv_shift(&g1), speed.recip());
        let g3 = jv_scale(&jv_shift(&g2), speed.recip());
        let det = det4_g(&[
            [g[0].val(), g[1].val(), g[2].val(), g[3].val()],
            [g1[0].val(), g1[1].val(), g1[2].val(), g1[3].val()],
            [g2[0].val(), g2[1].val(), g2[2].val(), g2[3].val()],
            [g3[0].val(), g3[1].val(), g3[2].val(), g3[3].val()],
        ]);
        let tau = if timelike_tangent {
            -det / (kappa * kappa)
        } else {
            delta * det / (kappa * kappa)
        };
        data.n1.push(Some(jv_val(&n1)));
        data.n2.push(Some(jv_val(&n2)));
        data.tau_g.push(Some(tau));
        data.delta.push(if timelike_tangent { None } else { Some(delta) });
    }
    Ok(data)
}

/// Sign rule for the rotation angle: `theta' = -ell` or `theta' = +ell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaSign {
    NegEll,
    PosEll,
}

impl ThetaSign {
    fn factor(self) -> f64 {
        match self {
            ThetaSign::NegEll => -1.0,
            ThetaSign::PosEll => 1.0,
        }
    }
}

/// Integrates `theta' = sign * ell` over the grid with fixed-step RK4,
/// evaluating `ell` between samples from the local Taylor models. Returned
/// jets carry the exact antiderivative coefficients above the RK4 values.
pub(crate) fn integrate_theta(
    fc: &FramedCurve,
    theta0: f64,
    sign: ThetaSign,
) -> Vec<Jet> {
    let n = fc.len();
    let sgn = sign.factor();
    let ell_jets: Vec<Jet> = fc
        .jets
        .iter()
        .map(|j| curvature_jets(fc.kind, fc.eps, j).ell)
        .collect();
    let mut theta = vec![0.0f64; n];
    theta[0] = theta0;
    for i in 0..n - 1 {
        let h = fc.s[i + 1] - fc.s[i];
        let f = |off: f64| sgn * ell_jets[i].eval(off);
        let k1 = f(0.0);
        let k2 = f(0.5 * h);
        let k3 = k2;
        let k4 = f(h);
        theta[i + 1] = theta[i] + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    (0..n)
        .map(|i| (sgn * ell_jets[i]).antiderivative(theta[i]))
        .collect()
}

/// The Bishop-type frame: `(v1, v2)` rotated so the ell-coefficient vanishes.
pub struct BishopData {
    pub s: Vec<f64>,
    pub theta: Vec<f64>,
    pub mbar: Vec<f64>,
    pub nbar: Vec<f64>,
    pub vbar1: Vec<Vec4R22>,
    pub vbar2: Vec<Vec4R22>,
}

/// Builds the Bishop-type frame with `theta(s_min) = theta0`. The rotation is
/// hyperbolic for the spacelike kind (`theta' = -ell`) and circular for the
/// timelike kind (`theta' = +ell`); `mu` is untouched in both cases.
pub fn bishop_frame(fc: &FramedCurve, theta0: f64) -> BishopData {
    let sign = match fc.kind {
        CurveKind::Spacelike => ThetaSign::NegEll,
        CurveKind::Timelike => ThetaSign::PosEll,
    };
    let theta_jets = integrate_theta(fc, theta0, sign);
    let n = fc.len();
    let mut out = BishopData {
        s: fc.s.clone(),
        theta: theta_jets.iter().map(Jet::val).collect(),
        mbar: Vec::with_capacity(n),
        nbar: Vec::with_capacity(n),
        vbar1: Vec::with_capacity(n),
        vbar2: Vec::with_capacity(n),
    };
    for i in 0..n {
        let cj = curvature_jets(fc.kind, fc.eps, &fc.jets[i]);
        let (m, nn) = (cj.m.val(), cj.n.val());
        let th = out.theta[i];
        let v1 = fc.v1(i);
        let v2 = fc.v2(i);
        match fc.kind {
            CurveKind::Spacelike => {
                let (sh, ch) = (th.sinh(), th.cosh());
                out.vbar1.push(v1.scale(ch) + v2.scale(sh));
                out.vbar2.push(v1.scale(sh) + v2.scale(ch));
                out.mbar.push(ch * m + sh * nn);
                out.nbar.push(sh * m + ch * nn);
            }
            CurveKind::Timelike => {
                let (sn, cs) = (th.sin(), th.cos());
                out.vbar1.push(v1.scale(cs) - v2.scale(sn));
                out.vbar2.push(v1.scale(sn) + v2.scale(cs));
                out.mbar.push(cs * m - sn * nn);
                out.nbar.push(sn * m + cs * nn);
            }
        }
    }
    out
}

/// Per-sample jets of the adapted frame.
#[derive(Clone, Debug)]
pub(crate) struct AdaptedJets {
    pub f1: JetVec4,
    pub f2: JetVec4,
    pub alpha: Jet,
    pub ell_hat: Jet,
    pub n_hat: Jet,
}

/// The adapted moving frame `(f1, f2)` normalizing `(m, n)` so the m-slot of
/// the derivative system vanishes, with its hat-curvatures.
pub struct AdaptedFrameData {
    pub s: Vec<f64>,
    /// Causal sign of f1; +1 for the timelike kind.
    pub eps_hat: f64,
    pub f1: Vec<Vec4R22>,
    pub f2: Vec<Vec4R22>,
    pub ell_hat: Vec<f64>,
    pub n_hat: Vec<f64>,
    pub(crate) jets: Vec<AdaptedJets>,
}

pub(crate) fn adapted_jets_at(
    kind: CurveKind,
    eps: f64,
    jets: &FrameJets,
    tols: &Tolerances,
    s: f64,
) -> Result<(AdaptedJets, f64)> {
    let cj = curvature_jets(kind, eps, jets);
    let (m, n, ell, alpha) = (cj.m, cj.n, cj.ell, cj.alpha);
    match kind {
        CurveKind::Spacelike => {
            let q = n * n - m * m;
            if q.val().abs() < tols.sing {
                return Err(Error::AdaptedFrameDegenerate {
                    s,
                    what: "m^2 = n^2",
                });
            }
            let eps_hat = eps * q.val().signum();
            let rho = (q * q.val().signum()).sqrt();
            let f1 = jv_scale(&jv_sub(&jv_scale(&jets.v1, n), &jv_scale(&jets.v2, m)), rho.recip());
            let f2 = jv_scale(
                &jv_add(&jv_scale(&jets.v1, -m), &jv_scale(&jets.v2, n)),
                rho.recip(),
            );
            let ell_hat = ell + (m * n.shift() - n * m.shift()) / q;
            let n_hat = eps_hat * eps * rho;
            Ok((
                AdaptedJets {
                    f1,
                    f2,
                    alpha,
                    ell_hat,
                    n_hat,
                },
                eps_hat,
            ))
        }
        CurveKind::Timelike => {
            let q = n * n + m * m;
            if q.val() < tols.sing * tols.sing {
                return Err(Error::AdaptedFrameDegenerate {
                    s,
                    what: "(m, n) = (0, 0)",
                });
            }
            let n_hat = q.sqrt();
            let f1 = jv_scale(
                &jv_sub(&jv_scale(&jets.v1, n), &jv_scale(&jets.v2, m)),
                n_hat.recip(),
            );
            let f2 = jv_scale(
                &jv_add(&jv_scale(&jets.v1, m), &jv_scale(&jets.v2, n)),
                n_hat.recip(),
            );
            let ell_hat = ell + (m * n.shift() - n * m.shift()) / q;
            Ok((
                AdaptedJets {
                    f1,
                    f2,
                    alpha,
                    ell_hat,
                    n_hat,
                },
                1.0,
            ))
        }
    }
}

/// Builds the adapted frame along the whole grid. Fails where the defining
/// normalization degenerates (`m^2 = n^2` for the spacelike kind, `(m, n) =
/// (0, 0)` for the timelike kind) and validates that the m-slot vanished.
pub fn adapted_frame(fc: &FramedCurve, tols: &Tolerances) -> Result<AdaptedFrameData> {
    let n = fc.len();
    let mut jets = Vec::with_capacity(n);
    let mut eps_hat = 0.0;
    for i in 0..n {
        let (aj, eh) = adapted_jets_at(fc.kind, fc.eps, &fc.jets[i], tols, fc.s[i])?;
        if i == 0 {
            eps_hat = eh;
        } else if eh != eps_hat {
            return Err(Error::AdaptedFrameDegenerate {
                s: fc.s[i],
                what: "causal sign of f1 changes across the grid",
            });
        }
        // the adapted frame kills the m-slot: <f1', mu> = 0
        let residual = jinner(&jv_shift(&aj.f1), &fc.jets[i].mu).val().abs();
        let tol = 5.0 * tols.framed(fc.depth > 3).max(1e-12);
        if residual > tol {
            return Err(Error::FramedConditionViolated {
                s: fc.s[i],
                what: "<f1', mu>",
                residual,
            });
        }
        jets.push(aj);
    }
    Ok(AdaptedFrameData {
        s: fc.s.clone(),
        eps_hat,
        f1: jets.iter().map(|j| jv_val(&j.f1)).collect(),
        f2: jets.iter().map(|j| jv_val(&j.f2)).collect(),
        ell_hat: jets.iter().map(|j| j.ell_hat.val()).collect(),
        n_hat: jets.iter().map(|j| j.n_hat.val()).collect(),
        jets,
    })
}

/// Hyperbolic function pair selector for spacelike parallels and the F2
/// focal family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HyperbolicPair {
    /// `(P, R) = (cosh, sinh)`
    CoshSinh,
    /// `(P, R) = (sinh, cosh)`
    SinhCosh,
}

impl HyperbolicPair {
    /// `P(theta)^2 - R(theta)^2`.
    pub fn squared_difference(self) -> f64 {
        match self {
            HyperbolicPair::CoshSinh => 1.0,
            HyperbolicPair::SinhCosh => -1.0,
        }
    }

    pub(crate) fn eval(self, th: Jet) -> (Jet, Jet) {
        let (sh, ch) = th.sinh_cosh();
        match self {
            HyperbolicPair::CoshSinh => (ch, sh),
            HyperbolicPair::SinhCosh => (sh, ch),
        }
    }
}

/// Offset and frame choices for an anti-de Sitter parallel.
#[derive(Clone, Copy, Debug)]
pub struct ParallelParams {
    pub phi: f64,
    /// `(P, R)` selector; spacelike kind only.
    pub variant: HyperbolicPair,
    pub theta0: f64,
    /// Sign rule for the rotation angle. The parallel definitions print
    /// `theta' = -ell` for both kinds; the timelike Bishop construction uses
    /// `+ell`, so the selector accepts either.
    pub theta_sign: ThetaSign,
}

impl Default for ParallelParams {
    fn default() -> Self {
        ParallelParams {
            phi: 0.0,
            variant: HyperbolicPair::CoshSinh,
            theta0: 0.0,
            theta_sign: ThetaSign::NegEll,
        }
    }
}

/// Builds the anti-de Sitter parallel of a framed curve together with its
/// transported frame. The result is again a validated framed curve whose
/// curvature has a vanishing ell-component.
pub fn parallel_curve(
    fc: &FramedCurve,
    pp: &ParallelParams,
    tols: &Tolerances,
) -> Result<FramedCurve> {
    let theta_jets = integrate_theta(fc, pp.theta0, pp.theta_sign);
    let n = fc.len();
    let mut jets = Vec::with_capacity(n);
    for i in 0..n {
        let fj = &fc.jets[i];
        let th = theta_jets[i];
        match fc.kind {
            CurveKind::Spacelike => {
                let (p, r) = pp.variant.eval(th);
                let sign_e = fc.eps * pp.variant.squared_difference();
                let (f, g) = if sign_e < 0.0 {
                    let (sn, cs) = Jet::constant(pp.phi).sin_cos();
                    (cs.val(), sn.val())
                } else {
                    (pp.phi.cosh(), pp.phi.sinh())
                };
                let dir = jv_add(&jv_scale(&fj.v1, p), &jv_scale(&fj.v2, r));
                let gamma = jv_add(&jv_scale(&fj.gamma, Jet::constant(f)), &jv_scale(&dir, Jet::constant(g)));
                let v1 = jv_add(
                    &jv_scale(&fj.gamma, Jet::constant(sign_e * g)),
                    &jv_scale(&dir, Jet::constant(f)),
                );
                let v2 = jv_add(&jv_scale(&fj.v1, r), &jv_scale(&fj.v2, p));
                let mu = crate::curve::jtriple(&gamma, &v1, &v2);
                jets.push(FrameJets { gamma, v1, v2, mu });
            }
            CurveKind::Timelike => {
                let (sn, cs) = th.sin_cos();
                let (chp, shp) = (pp.phi.cosh(), pp.phi.sinh());
                let dir = jv_add(&jv_scale(&fj.v1, cs), &jv_scale(&fj.v2, sn));
                let gamma = jv_add(
                    &jv_scale(&fj.gamma, Jet::constant(chp)),
                    &jv_scale(&dir, Jet::constant(shp)),
                );
                let v1 = jv_add(
                    &jv_scale(&fj.gamma, Jet::constant(shp)),
                    &jv_scale(&dir, Jet::constant(chp)),
                );
                let v2 = jv_add(&jv_scale(&fj.v1, -sn), &jv_scale(&fj.v2, cs));
                let mu = crate::curve::jtriple(&gamma, &v1, &v2);
                jets.push(FrameJets { gamma, v1, v2, mu });
            }
        }
    }
    FramedCurve::from_jets(
        fc.kind,
        fc.s.clone(),
        jets,
        fc.depth,
        tols.framed(fc.depth > 3),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSource;

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

    #[test]
    fn timelike_example_curvature_is_constant() {
        let fc = sample("timelike-example", -1.0, 1.0, 201);
        let cq = framed_curvature(&fc);
        for i in 0..fc.len() {
            assert!((cq.alpha[i] - 1.0).abs() < 1e-12);
            assert!((cq.ell[i] - 1.0).abs() < 1e-12);
            assert!((cq.m[i] - 3.0 / SQRT2).abs() < 1e-12);
            assert!(cq.n[i].abs() < 1e-12);
        }
    }

    #[test]
    fn circle_trivial_curvature() {
        let fc = sample("circle-trivial", 0.0, 1.0, 11);
        let cq = framed_curvature(&fc);
        for i in 0..fc.len() {
            assert!((cq.alpha[i] - 1.0).abs() < 1e-14);
            assert!(cq.ell[i].abs() < 1e-14);
            assert!(cq.m[i].abs() < 1e-14);
            assert!(cq.n[i].abs() < 1e-14);
        }
        assert!(singular_parameters(&cq, &tols()).is_empty());
    }

    #[test]
    fn spacelike_example_curvature_at_zero() {
        let fc = sample("spacelike-example", -1.0, 1.0, 201);
        let cq = framed_curvature(&fc);
        let mid = 100;
        assert_eq!(cq.s[mid], 0.0);
        assert!(cq.alpha[mid].abs() < 1e-14);
        assert!(cq.ell[mid].abs() < 1e-14);
        assert!((cq.m[mid] - 1.5).abs() < 1e-14);
        assert!(cq.n[mid].abs() < 1e-14);
        let sing = singular_parameters(&cq, &tols());
        assert_eq!(sing.len(), 1);
        assert!(sing[0].abs() < 1e-10);
    }

    #[test]
    fn singular_parameters_refine_off_grid_zeros() {
        // grid that does not contain the zero of alpha exactly
        let fc = CurveSource::from_catalog("spacelike-example")
            .unwrap()
            .sample(-0.9937, 1.0, 173, &tols())
            .unwrap();
        let cq = framed_curvature(&fc);
        let sing = singular_parameters(&cq, &tols());
        assert_eq!(sing.len(), 1);
        assert!(sing[0].abs() < 1e-10, "found {}", sing[0]);
    }

    #[test]
    fn frenet_geodesic_flags() {
        for name in ["circle-trivial", "geodesic-spacelike"] {
            let fc = sample(name, -1.0, 1.0, 21);
            let data = regular_frenet(&fc, &tols()).unwrap();
            assert!(data.is_geodesic.iter().all(|&b| b), "{name}");
        }
    }

    #[test]
    fn frenet_timelike_example() {
        use crate::metric::inner;
        let fc = sample("timelike-example", -1.0, 1.0, 21);
        let data = regular_frenet(&fc, &tols()).unwrap();
        for i in 0..fc.len() {
            assert!(!data.is_geodesic[i]);
            assert!((data.kappa_g[i] - 3.0 / SQRT2).abs() < 1e-10);
        }
        // N1(0) = (3/sqrt2) v1(0)
        let mid = 10;
        let n1 = data.n1[mid].unwrap();
        assert!((n1 - fc.v1(mid)).flat_norm() < 1e-10);
        // {gamma, T, n1, n2} is pseudo-orthonormal where kappa_g != 0
        for i in 0..fc.len() {
            let frame = [fc.gamma(i), data.t[i], data.n1[i].unwrap(), data.n2[i].unwrap()];
            for (a, u) in frame.iter().enumerate() {
                assert!((inner(*u, *u).abs() - 1.0).abs() < 1e-10);
                for w in frame.iter().skip(a + 1) {
                    assert!(inner(*u, *w).abs() < 1e-10);
                }
            }
            assert!(data.tau_g[i].unwrap().is_finite());
        }
    }

    #[test]
    fn frenet_rejects_singular_curves() {
        let fc = sample("spacelike-example", -1.0, 1.0, 201);
        assert!(matches!(
            regular_frenet(&fc, &tols()),
            Err(Error::NotRegular { .. })
        ));
    }

    #[test]
    fn bishop_timelike_example() {
        let fc = sample("timelike-example", 0.0, 1.0, 101);
        let b = bishop_frame(&fc, 0.0);
        for i in 0..fc.len() {
            // ell = 1 and theta' = +ell gives theta(s) = s
            assert!((b.theta[i] - fc.s[i]).abs() < 1e-12);
            let expect_m = 3.0 / SQRT2 * fc.s[i].cos();
            let expect_n = 3.0 / SQRT2 * fc.s[i].sin();
            assert!((b.mbar[i] - expect_m).abs() < 1e-11);
            assert!((b.nbar[i] - expect_n).abs() < 1e-11);
            // rotation preserves m^2 + n^2
            let sum = b.mbar[i] * b.mbar[i] + b.nbar[i] * b.nbar[i];
            assert!((sum - 4.5).abs() < 1e-10);
        }
    }

    #[test]
    fn bishop_leaves_mu_fixed_and_kills_ell() {
        for name in ["timelike-example", "spacelike-example"] {
            let fc = sample(name, -0.8, 0.8, 161);
            let b = bishop_frame(&fc, 0.3);
            let cq = framed_curvature(&fc);
            for i in 0..fc.len() {
                let mu = crate::metric::triple_product(fc.gamma(i), b.vbar1[i], b.vbar2[i]);
                assert!((mu - fc.mu(i)).flat_norm() < 1e-12, "{name} sample {i}");
            }
            // theta' = -ell (spacelike) / +ell (timelike) via 4th-order
            // differences of the integrated angle
            let h = fc.spacing();
            let sign = if fc.kind == CurveKind::Spacelike { -1.0 } else { 1.0 };
            for i in 2..fc.len() - 2 {
                let dtheta = (b.theta[i - 2] - 8.0 * b.theta[i - 1] + 8.0 * b.theta[i + 1]
                    - b.theta[i + 2])
                    / (12.0 * h);
                assert!(
                    (dtheta - sign * cq.ell[i]).abs() < 1e-7,
                    "{name} theta slope residual at {i}"
                );
            }
            // the rotation kills the ell-component: <vbar1', vbar2> = 0,
            // with vbar1' from exact jets of the rotated pair
            let theta_jets = integrate_theta(
                &fc,
                0.3,
                if fc.kind == CurveKind::Spacelike {
                    ThetaSign::NegEll
                } else {
                    ThetaSign::PosEll
                },
            );
            for i in 0..fc.len() {
                let j = fc.sample_jets(i);
                let (vb1, vb2) = match fc.kind {
                    CurveKind::Spacelike => {
                        let (sh, ch) = theta_jets[i].sinh_cosh();
                        (
                            jv_add(&jv_scale(&j.v1, ch), &jv_scale(&j.v2, sh)),
                            jv_add(&jv_scale(&j.v1, sh), &jv_scale(&j.v2, ch)),
                        )
                    }
                    CurveKind::Timelike => {
                        let (sn, cs) = theta_jets[i].sin_cos();
                        (
                            jv_sub(&jv_scale(&j.v1, cs), &jv_scale(&j.v2, sn)),
                            jv_add(&jv_scale(&j.v1, sn), &jv_scale(&j.v2, cs)),
                        )
                    }
                };
                let res = jinner(&jv_shift(&vb1), &vb2).val();
                assert!(res.abs() < 1e-10, "{name} ell residual {res:.2e} at {i}");
            }
        }
    }

    #[test]
    fn bishop_circle_is_identity() {
        let fc = sample("circle-trivial", 0.0, 1.0, 11);
        let b = bishop_frame(&fc, 0.0);
        for i in 0..fc.len() {
            assert_eq!(b.theta[i], 0.0);
            assert!((b.vbar1[i] - fc.v1(i)).flat_norm() < 1e-15);
            assert!((b.vbar2[i] - fc.v2(i)).flat_norm() < 1e-15);
        }
    }

    #[test]
    fn adapted_frame_timelike_example() {
        let fc = sample("timelike-example", -1.0, 1.0, 101);
        let ad = adapted_frame(&fc, &tols()).unwrap();
        assert_eq!(ad.eps_hat, 1.0);
        for i in 0..fc.len() {
            assert!((ad.f1[i] - (-fc.v2(i))).flat_norm() < 1e-12);
            assert!((ad.f2[i] - fc.v1(i)).flat_norm() < 1e-12);
            assert!((ad.ell_hat[i] - 1.0).abs() < 1e-12);
            assert!((ad.n_hat[i] - 3.0 / SQRT2).abs() < 1e-12);
        }
    }

    #[test]
    fn adapted_frame_degenerate_on_circle() {
        let fc = sample("circle-trivial", 0.0, 1.0, 11);
        assert!(matches!(
            adapted_frame(&fc, &tols()),
            Err(Error::AdaptedFrameDegenerate { .. })
        ));
    }

    #[test]
    fn adapted_frame_spacelike_example_at_zero() {
        let fc = sample("spacelike-example", -0.5, 0.5, 101);
        let ad = adapted_frame(&fc, &tols()).unwrap();
        assert_eq!(ad.eps_hat, -1.0);
        let mid = 50;
        assert!((ad.n_hat[mid] - (-1.5)).abs() < 1e-12);
        // ell_hat(0) = (m n' - n m')/(n^2 - m^2) = 2*sqrt(2)/3
        assert!((ad.ell_hat[mid] - 2.0 * SQRT2 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn parametrization_covariance() {
        // curvature transforms by u'(s) under u(s) = s^3/3 + s
        let base = CurveSource::from_catalog("spacelike-example").unwrap();
        let fc = CurveSource::from_catalog("spacelike-example")
            .unwrap()
            .reparametrize(|s| s * s * s / 3.0 + s)
            .sample(-0.7, 0.7, 101, &tols())
            .unwrap();
        let cq = framed_curvature(&fc);
        for (i, &s) in fc.s.iter().enumerate() {
            let u = s * s * s / 3.0 + s;
            let up = s * s + 1.0;
            let orig = framed_curvature(&base.sample_at(&[u - 0.2, u - 0.1, u, u + 0.1, u + 0.2], &tols()).unwrap());
            assert!((cq.alpha[i] - up * orig.alpha[2]).abs() < 1e-6);
            assert!((cq.ell[i] - up * orig.ell[2]).abs() < 1e-6);
            assert!((cq.m[i] - up * orig.m[2]).abs() < 1e-6);
            assert!((cq.n[i] - up * orig.n[2]).abs() < 1e-6);
        }
    }

    #[test]
    fn parallel_zero_offset_keeps_base_curve() {
        let fc = sample("timelike-example", -0.5, 0.5, 51);
        let pp = ParallelParams {
            phi: 0.0,
            theta0: 0.2,
            ..Default::default()
        };
        let par = parallel_curve(&fc, &pp, &tols()).unwrap();
        for i in 0..fc.len() {
            assert!((par.gamma(i) - fc.gamma(i)).flat_norm() < 1e-13);
        }
    }

    #[test]
    fn parallel_timelike_curvature_matches_formulas() {
        let fc = sample("timelike-example", 0.0, 1.0, 101);
        let phi = 0.5;
        let pp = ParallelParams {
            phi,
            theta0: 0.0,
            ..Default::default()
        };
        let par = parallel_curve(&fc, &pp, &tols()).unwrap();
        let cq = framed_curvature(&par);
        for i in 0..fc.len() {
            // theta' = -ell = -1 from theta0 = 0
            let th = -fc.s[i];
            let expect_alpha = phi.cosh() + phi.sinh() * (3.0 / SQRT2) * th.cos();
            let expect_m = phi.sinh() + phi.cosh() * (3.0 / SQRT2) * th.cos();
            let expect_n = -th.sin() * (3.0 / SQRT2);
            assert!((cq.alpha[i] - expect_alpha).abs() < 1e-10, "alpha at {i}");
            assert!(cq.ell[i].abs() < 1e-10, "ell at {i}");
            assert!((cq.m[i] - expect_m).abs() < 1e-10, "m at {i}");
            assert!((cq.n[i] - expect_n).abs() < 1e-10, "n at {i}");
        }
    }

    #[test]
    fn parallel_of_parallel_adds_offsets() {
        let fc = sample("timelike-example", 0.0, 0.8, 81);
        let mk = |phi| ParallelParams {
            phi,
            theta0: 0.0,
            ..Default::default()
        };
        let once = parallel_curve(&fc, &mk(0.3), &tols()).unwrap();
        let twice = parallel_curve(&once, &mk(0.45), &tols()).unwrap();
        let direct = parallel_curve(&fc, &mk(0.75), &tols()).unwrap();
        for i in 0..fc.len() {
            assert!(
                (twice.gamma(i) - direct.gamma(i)).flat_norm() < 1e-9,
                "sample {i}: {:e}",
                (twice.gamma(i) - direct.gamma(i)).flat_norm()
            );
        }
    }

    #[test]
    fn spacelike_parallel_variants_validate() {
        let fc = sample("spacelike-example", -0.5, 0.5, 101);
        for variant in [HyperbolicPair::CoshSinh, HyperbolicPair::SinhCosh] {
            let pp = ParallelParams {
                phi: 0.3,
                variant,
                theta0: 0.0,
                theta_sign: ThetaSign::NegEll,
            };
            let par = parallel_curve(&fc, &pp, &tols()).unwrap();
            let cq = framed_curvature(&par);
            for i in 0..par.len() {
                assert!(cq.ell[i].abs() < 1e-9, "{variant:?} ell at {i}");
            }
        }
    }

    #[test]
    fn frame_equations_hold() {
        // residuals of the derivative system for both kinds
        for name in ["spacelike-example", "timelike-example"] {
            let fc = sample(name, -0.9, 0.9, 91);
            let cq = framed_curvature(&fc);
            for i in 0..fc.len() {
                let j = fc.sample_jets(i);
                let (a, l, m, n) = (cq.alpha[i], cq.ell[i], cq.m[i], cq.n[i]);
                let gp = jv_val(&jv_shift(&j.gamma));
                let v1p = jv_val(&jv_shift(&j.v1));
                let v2p = jv_val(&jv_shift(&j.v2));
                let mup = jv_val(&jv_shift(&j.mu));
                let (g, v1, v2, mu) = (fc.gamma(i), fc.v1(i), fc.v2(i), fc.mu(i));
                let (r1, r2, r3, r4) = match fc.kind {
                    CurveKind::Spacelike => (
                        gp - mu.scale(a),
                        v1p - (v2.scale(l) + mu.scale(m)),
                        v2p - (v1.scale(l) + mu.scale(n)),
                        mup - (g.scale(a) + v1.scale(-fc.eps * m) + v2.scale(fc.eps * n)),
                    ),
                    CurveKind::Timelike => (
                        gp - mu.scale(a),
                        v1p - (v2.scale(l) + mu.scale(m)),
                        v2p - (v1.scale(-l) + mu.scale(n)),
                        mup - (g.scale(-a) + v1.scale(m) + v2.scale(n)),
                    ),
                };
                for r in [r1, r2, r3, r4] {
                    assert!(r.flat_norm() < 5e-10, "{name} sample {i}: {:e}", r.flat_norm());
                }
            }
        }
    }
}
