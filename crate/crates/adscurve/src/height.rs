//! Height functions on framed immersions and their discriminant sets, which
//! realize the focal surfaces and the evolutes as wavefront data.

use crate::config::Tolerances;
use crate::curve::{jinner, jv_add, jv_scale, jv_val, CurveKind, FramedCurve, JetVec4};
use crate::error::{Error, Result};
use crate::framing::AdaptedFrameData;
use crate::metric::{inner, triple_product, Vec4R22};

/// Which height-function family is evaluated. The PS families belong to
/// spacelike input, the AdS families to timelike input; the "timelike"
/// flavour takes arguments on AdS^3, the "spacelike" flavour on S^3_2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeightKind {
    PsTimelike,
    PsSpacelike,
    AdsTimelike,
    AdsSpacelike,
}

impl HeightKind {
    fn curve_kind(self) -> CurveKind {
        match self {
            HeightKind::PsTimelike | HeightKind::PsSpacelike => CurveKind::Spacelike,
            HeightKind::AdsTimelike | HeightKind::AdsSpacelike => CurveKind::Timelike,
        }
    }

    /// `<v,v>` of admissible arguments.
    fn sphere_sign(self) -> f64 {
        match self {
            HeightKind::PsTimelike | HeightKind::AdsTimelike => -1.0,
            HeightKind::PsSpacelike | HeightKind::AdsSpacelike => 1.0,
        }
    }
}

/// Values of a height function and its first two parameter derivatives at
/// one evaluation point.
#[derive(Clone, Copy, Debug)]
pub struct HeightCheck {
    pub v: Vec4R22,
    pub h: f64,
    pub h_s: f64,
    pub h_ss: f64,
    pub which: HeightKind,
}

/// Jets of `mu`, `mu'`, `mu''` expanded through the adapted frame equations
/// rather than raw differentiation of samples.
fn mu_derivatives(
    fc: &FramedCurve,
    adapted: &AdaptedFrameData,
    i: usize,
) -> (JetVec4, JetVec4, JetVec4) {
    let aj = &adapted.jets[i];
    let jets = fc.sample_jets(i);
    let (alpha, lhat, nhat) = (aj.alpha, aj.ell_hat, aj.n_hat);
    match fc.kind {
        CurveKind::Spacelike => {
            let eh = adapted.eps_hat;
            // mu' = alpha gamma + eps_hat n_hat f2
            let mu_p = jv_add(
                &jv_scale(&jets.gamma, alpha),
                &jv_scale(&aj.f2, eh * nhat),
            );
            // mu'' = alpha' gamma + eps_hat lhat n_hat f1 + eps_hat n_hat' f2
            //        + (alpha^2 + eps_hat n_hat^2) mu
            let mu_pp = jv_add(
                &jv_add(
                    &jv_scale(&jets.gamma, alpha.shift()),
                    &jv_scale(&aj.f1, eh * lhat * nhat),
                ),
                &jv_add(
                    &jv_scale(&aj.f2, eh * nhat.shift()),
                    &jv_scale(&jets.mu, alpha * alpha + eh * (nhat * nhat)),
                ),
            );
            (jets.mu, mu_p, mu_pp)
        }
        CurveKind::Timelike => {
            // mu' = -alpha gamma + n_hat f2
            let mu_p = jv_add(&jv_scale(&jets.gamma, -alpha), &jv_scale(&aj.f2, nhat));
            // mu'' = -alpha' gamma - lhat n_hat f1 + n_hat' f2
            //        + (n_hat^2 - alpha^2) mu
            let mu_pp = jv_add(
                &jv_add(
                    &jv_scale(&jets.gamma, -alpha.shift()),
                    &jv_scale(&aj.f1, -(lhat * nhat)),
                ),
                &jv_add(
                    &jv_scale(&aj.f2, nhat.shift()),
                    &jv_scale(&jets.mu, nhat * nhat - alpha * alpha),
                ),
            );
            (jets.mu, mu_p, mu_pp)
        }
    }
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

/// Evaluates `(H, dH/ds, d2H/ds2)` for the selected height family at
/// parameter `s` and argument `v`. The derivatives come from the frame
/// equations; off-grid parameters use the local Taylor models.
pub fn height_check(
    fc: &FramedCurve,
    adapted: &AdaptedFrameData,
    v: Vec4R22,
    s: f64,
    which: HeightKind,
    tols: &Tolerances,
) -> Result<HeightCheck> {
    if which.curve_kind() != fc.kind {
        return Err(Error::Domain(format!(
            "height family {which:?} does not apply to {} input",
            fc.kind
        )));
    }
    let expected = which.sphere_sign();
    let q = inner(v, v);
    if (q - expected).abs() > tols.memb {
        return Err(Error::SphereMismatch { expected, value: q });
    }
    let i = nearest_index(&fc.s, s);
    let off = s - fc.s[i];
    let (mu, mu_p, mu_pp) = mu_derivatives(fc, adapted, i);
    let vj = crate::curve::jv_constant(v);
    let eval = |field: &JetVec4| -> f64 { jinner(field, &vj).eval(off) };
    Ok(HeightCheck {
        v,
        h: eval(&mu),
        h_s: eval(&mu_p),
        h_ss: eval(&mu_pp),
        which,
    })
}

/// Discriminant data over the grid: per parameter, the family of arguments
/// annihilating `(H, H_s)` and the single argument annihilating
/// `(H, H_s, H_ss)`.
pub struct DiscriminantSets {
    pub which: HeightKind,
    /// For each grid sample, the `(s, points)` family solving `H = H_s = 0`,
    /// parametrized by the supplied angle grid.
    pub d: Vec<(f64, Vec<Vec4R22>)>,
    /// For each grid sample admitting one, the secondary-discriminant point
    /// solving `H = H_s = H_ss = 0`.
    pub d2: Vec<(f64, Vec4R22)>,
}

/// Scans the discriminant and secondary discriminant sets.
///
/// The `H = H_s = 0` family at fixed `s` is the pseudo-sphere slice of the
/// orthogonal complement of `span(mu, mu')`, parametrized through the frame
/// coefficients `(a, b, c)` with `c = -a alpha / n_hat`; the secondary point
/// is the normalized triple product of `(mu, mu', mu'')`, which is computed
/// without reference to any evolute formula.
pub fn discriminant_scan(
    fc: &FramedCurve,
    adapted: &AdaptedFrameData,
    which: HeightKind,
    theta_grid: &[f64],
    tols: &Tolerances,
) -> Result<DiscriminantSets> {
    if which.curve_kind() != fc.kind {
        return Err(Error::Domain(format!(
            "height family {which:?} does not apply to {} input",
            fc.kind
        )));
    }
    let sphere = which.sphere_sign();
    let mut d = Vec::with_capacity(fc.len());
    let mut d2 = Vec::new();
    let mut prev_d2: Option<Vec4R22> = None;
    for i in 0..fc.len() {
        let aj = &adapted.jets[i];
        let (alpha, nhat) = (aj.alpha.val(), aj.n_hat.val());
        let gamma = fc.gamma(i);
        let f1 = jv_val(&aj.f1);
        let f2 = jv_val(&aj.f2);
        let eps_hat = adapted.eps_hat;
        // family: v = a gamma + b f1 + c f2 with c = -a alpha / n_hat and
        // <v,v> = sphere
        let mut family = Vec::new();
        for &th in theta_grid {
            // walk the conic by b = sinh(th) (timelike slice) or matched
            // variants; solve a^2 from the constraint
            let b = match which {
                HeightKind::AdsTimelike | HeightKind::PsTimelike => th.sinh(),
                HeightKind::AdsSpacelike | HeightKind::PsSpacelike => th.cosh(),
            };
            let (b2_coef, rhs_scale) = match fc.kind {
                // n_hat^2 (1 + eps_hat b^2) = a^2 (n_hat^2 + eps_hat alpha^2)  [PS-timelike]
                // n_hat^2 (eps_hat b^2 - 1) = a^2 (n_hat^2 + eps_hat alpha^2)  [PS-spacelike]
                CurveKind::Spacelike => (eps_hat, nhat * nhat + eps_hat * alpha * alpha),
                // n_hat^2 (1 + b^2) = a^2 (n_hat^2 - alpha^2)   [AdS-timelike]
                // n_hat^2 (b^2 - 1) = a^2 (n_hat^2 - alpha^2)   [AdS-spacelike]
                CurveKind::Timelike => (1.0, nhat * nhat - alpha * alpha),
            };
            let lhs = nhat * nhat * (b2_coef * b * b - sphere);
            if rhs_scale == 0.0 {
                continue;
            }
            let a2 = lhs / rhs_scale;
            if a2 < 0.0 {
                continue;
            }
            let a = a2.sqrt();
            for sa in [a, -a] {
                let c = -sa * alpha / nhat;
                let v = gamma.scale(sa) + f1.scale(b) + f2.scale(c);
                let q = inner(v, v);
                if (q - sphere).abs() <= tols.memb.max(1e-9) {
                    family.push(v);
                }
            }
        }
        d.push((fc.s[i], family));

        // secondary discriminant: orthogonal complement of (mu, mu', mu'')
        let (mu, mu_p, mu_pp) = mu_derivatives(fc, adapted, i);
        let w = triple_product(jv_val(&mu), jv_val(&mu_p), jv_val(&mu_pp));
        let q = inner(w, w);
        if q.abs() < 1e-12 || q.signum() != sphere {
            prev_d2 = None;
            continue;
        }
        let mut v = w.scale(1.0 / q.abs().sqrt());
        if let Some(p) = prev_d2 {
            if (-v - p).flat_norm() < (v - p).flat_norm() {
                v = -v;
            }
        }
        prev_d2 = Some(v);
        d2.push((fc.s[i], v));
    }
    Ok(DiscriminantSets { which, d, d2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSource;
    use crate::evolute::{evolute, EvoluteOptions};
    use crate::framing::adapted_frame;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    fn timelike_setup(n: usize) -> (FramedCurve, AdaptedFrameData) {
        let fc = CurveSource::from_catalog("timelike-example")
            .unwrap()
            .sample(-1.0, 1.0, n, &tols())
            .unwrap();
        let ad = adapted_frame(&fc, &tols()).unwrap();
        (fc, ad)
    }

    #[test]
    fn evolute_annihilates_height_and_two_derivatives() {
        let (fc, ad) = timelike_setup(41);
        let out = evolute(&fc, &ad, &EvoluteOptions::default(), &tols()).unwrap();
        for sm in &out.samples {
            let chk = height_check(&fc, &ad, sm.point, sm.s, HeightKind::AdsTimelike, &tols())
                .unwrap();
            assert!(chk.h.abs() < 1e-10, "H = {:.3e}", chk.h);
            assert!(chk.h_s.abs() < 1e-10, "H_s = {:.3e}", chk.h_s);
            assert!(chk.h_ss.abs() < 1e-10, "H_ss = {:.3e}", chk.h_ss);
        }
    }

    #[test]
    fn generic_frame_combination_zeroes_only_h() {
        let (fc, ad) = timelike_setup(11);
        // v = a gamma + b f1 + c f2 with -a^2 + b^2 + c^2 = -1
        let i = 5;
        let (b, c) = (0.6, 0.3);
        let a = (1.0f64 + b * b + c * c).sqrt();
        let v = fc.gamma(i).scale(a) + jv_val(&ad.jets[i].f1).scale(b) + jv_val(&ad.jets[i].f2).scale(c);
        let chk = height_check(&fc, &ad, v, fc.s[i], HeightKind::AdsTimelike, &tols()).unwrap();
        assert!(chk.h.abs() < 1e-10);
        assert!(chk.h_s.abs() > 1e-3, "H_s should be generically nonzero");
    }

    #[test]
    fn generic_point_has_nonzero_height() {
        let (fc, ad) = timelike_setup(11);
        let v = Vec4R22::new(1.0, 0.0, 0.0, 0.0);
        let chk = height_check(&fc, &ad, v, 0.2, HeightKind::AdsTimelike, &tols()).unwrap();
        assert!(chk.h.abs() > 1e-3);
        assert!(chk.h_s.abs() > 1e-3);
    }

    #[test]
    fn sphere_mismatch_is_rejected() {
        let (fc, ad) = timelike_setup(11);
        let v = Vec4R22::new(0.0, 0.0, 1.0, 0.0); // on S^3_2, not AdS^3
        assert!(matches!(
            height_check(&fc, &ad, v, 0.0, HeightKind::AdsTimelike, &tols()),
            Err(Error::SphereMismatch { .. })
        ));
        assert!(matches!(
            height_check(&fc, &ad, v, 0.0, HeightKind::PsSpacelike, &tols()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn secondary_discriminant_is_the_evolute() {
        let (fc, ad) = timelike_setup(41);
        let theta: Vec<f64> = (0..11).map(|k| -1.0 + 0.2 * k as f64).collect();
        let sets = discriminant_scan(&fc, &ad, HeightKind::AdsTimelike, &theta, &tols()).unwrap();
        let out = evolute(&fc, &ad, &EvoluteOptions::default(), &tols()).unwrap();
        assert_eq!(sets.d2.len(), out.samples.len());
        for ((s, v), sm) in sets.d2.iter().zip(&out.samples) {
            assert_eq!(*s, sm.s);
            let dev = (*v - sm.point)
                .flat_norm()
                .min((*v + sm.point).flat_norm());
            assert!(dev < 1e-9, "s = {s}: deviation {dev:.3e}");
        }
    }

    #[test]
    fn discriminant_family_lies_on_the_focal_surface() {
        use crate::focal::{focal_surface, FocalCase};
        let (fc, ad) = timelike_setup(41);
        let theta: Vec<f64> = (0..21).map(|k| -1.0 + 0.1 * k as f64).collect();
        // the AdS^3-valued family realizes F3, the S^3_2-valued family F4
        for (which, case) in [
            (HeightKind::AdsTimelike, FocalCase::F3),
            (HeightKind::AdsSpacelike, FocalCase::F4),
        ] {
            let sets = discriminant_scan(&fc, &ad, which, &theta, &tols()).unwrap();
            let grid = focal_surface(&fc, &ad, case, (-1.05, 1.05), 127, &tols()).unwrap();
            // sampled one-sided Hausdorff distance: every discriminant point
            // is near the focal image
            let mut worst = 0.0f64;
            let mut points = 0usize;
            for (_, family) in &sets.d {
                for v in family {
                    points += 1;
                    let mut best = f64::INFINITY;
                    for p in &grid.points {
                        best = best.min((*v - *p).flat_norm().min((*v + *p).flat_norm()));
                    }
                    worst = worst.max(best);
                }
            }
            assert!(points > 0, "{which:?} produced no family points");
            assert!(worst < 1e-6, "{which:?} Hausdorff distance {worst:.3e}");
        }
    }
}
