//! Evolutes of framed immersions: branch classification by the discriminant,
//! the evolute's own moving frame, and its curvature through a closed-form
//! expression, a compact logarithmic-derivative form, and direct projection.

use crate::config::Tolerances;
use crate::curve::{jinner, jv_add, jv_scale, jv_shift, jv_sub, jv_val, CurveKind, FramedCurve, JetVec4};
use crate::error::{Error, Result};
use crate::framing::AdaptedFrameData;
use crate::jet::Jet;
use crate::metric::Vec4R22;

/// Which pseudo-sphere an evolute point lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvoluteBranch {
    /// Discriminant negative: the point lies on the anti-de Sitter 3-space.
    AdS,
    /// Discriminant positive: the point lies on the pseudo 3-sphere.
    Ps,
}

/// One evolute point with its provenance.
#[derive(Clone, Copy, Debug)]
pub struct EvoluteSample {
    pub s: f64,
    pub point: Vec4R22,
    pub branch: EvoluteBranch,
    /// Discriminant value (`g` for spacelike input, `f` for timelike input).
    pub disc: f64,
    /// Sign applied to the defining formula at this sample.
    pub sign_choice: f64,
    /// `<point, point>`.
    pub causal_sign: f64,
    pub(crate) idx: usize,
}

/// Sign selection and continuity policy for the evolute formula.
#[derive(Clone, Copy, Debug)]
pub struct EvoluteOptions {
    /// Caller-selected sign of the defining formula (+1 or -1).
    pub sign: f64,
    /// Flip signs per sample to minimize successive jumps.
    pub continuity: bool,
}

impl Default for EvoluteOptions {
    fn default() -> Self {
        EvoluteOptions {
            sign: 1.0,
            continuity: false,
        }
    }
}

/// Evolute samples plus the discriminant zero crossings found on the grid.
pub struct EvoluteOutput {
    pub samples: Vec<EvoluteSample>,
    /// Parameters where the discriminant crosses zero; the evolute is
    /// undefined there and the neighbouring segments change branch.
    pub gaps: Vec<f64>,
}

pub(crate) struct EvoluteCore {
    /// Evolute point with the + sign, as jets.
    pub point: JetVec4,
    pub disc: Jet,
}

/// Evaluates the defining formula (+ sign) and the discriminant at sample
/// `i`, at jet level.
pub(crate) fn evolute_core(fc: &FramedCurve, adapted: &AdaptedFrameData, i: usize) -> EvoluteCore {
    let aj = &adapted.jets[i];
    let gamma = &fc.sample_jets(i).gamma;
    let (alpha, lhat, nhat) = (aj.alpha, aj.ell_hat, aj.n_hat);
    let d = alpha * nhat.shift() - nhat * alpha.shift();
    let disc = match fc.kind {
        CurveKind::Spacelike => {
            let eh = adapted.eps_hat;
            eh * d * d - lhat * lhat * nhat * nhat * (nhat * nhat + eh * (alpha * alpha))
        }
        CurveKind::Timelike => {
            d * d - lhat * lhat * nhat * nhat * (nhat * nhat - alpha * alpha)
        }
    };
    let num = jv_sub(
        &jv_scale(
            &jv_sub(&jv_scale(gamma, nhat), &jv_scale(&aj.f2, alpha)),
            lhat * nhat,
        ),
        &jv_scale(&aj.f1, d),
    );
    let den = (disc * disc.val().signum()).sqrt();
    let point = jv_scale(&num, den.recip());
    EvoluteCore { point, disc }
}

fn check_guards(
    kind: CurveKind,
    eps_hat: f64,
    alpha: f64,
    nhat: f64,
    disc: f64,
    s: f64,
    tols: &Tolerances,
) -> Result<()> {
    match kind {
        CurveKind::Spacelike => {
            let a2 = alpha * alpha + eps_hat * nhat * nhat;
            if a2.abs() <= tols.root {
                return Err(Error::GuardViolated {
                    s,
                    which: "alpha^2 + eps_hat * n_hat^2 = 0".into(),
                });
            }
            if disc > 0.0 && eps_hat < 0.0 && nhat * nhat >= alpha * alpha {
                return Err(Error::GuardViolated {
                    s,
                    which: "PS branch with eps_hat = -1 requires n_hat^2 < alpha^2".into(),
                });
            }
        }
        CurveKind::Timelike => {
            if (alpha * alpha - nhat * nhat).abs() <= tols.root {
                return Err(Error::GuardViolated {
                    s,
                    which: "alpha^2 = n_hat^2".into(),
                });
            }
            if disc < 0.0 && nhat * nhat <= alpha * alpha {
                return Err(Error::GuardViolated {
                    s,
                    which: "AdS branch requires n_hat^2 > alpha^2".into(),
                });
            }
        }
    }
    Ok(())
}

/// Computes the total evolute over the sample grid.
///
/// Samples where the discriminant vanishes (within `tols.root`) are reported
/// as gaps rather than interpolated, along with the bisection-located zero
/// crossings; a discriminant that vanishes on the whole grid is an error.
pub fn evolute(
    fc: &FramedCurve,
    adapted: &AdaptedFrameData,
    opts: &EvoluteOptions,
    tols: &Tolerances,
) -> Result<EvoluteOutput> {
    assert!(opts.sign == 1.0 || opts.sign == -1.0, "sign must be +1 or -1");
    let n = fc.len();
    let cores: Vec<EvoluteCore> = (0..n).map(|i| evolute_core(fc, adapted, i)).collect();
    let mut gaps: Vec<f64> = Vec::new();
    // locate discriminant zero crossings between samples
    for i in 0..n - 1 {
        let (a, b) = (cores[i].disc.val(), cores[i + 1].disc.val());
        if a.abs() <= tols.root || b.abs() <= tols.root || a.signum() == b.signum() {
            continue;
        }
        let anchor = i; // Taylor model anchored at the left sample
        let s0 = fc.s[anchor];
        let f = |s: f64| cores[anchor].disc.eval(s - s0);
        let (mut lo, mut hi) = (fc.s[i], fc.s[i + 1]);
        let mut flo = f(lo);
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
        gaps.push(0.5 * (lo + hi));
    }

    let mut samples = Vec::with_capacity(n);
    for (i, core) in cores.iter().enumerate() {
        let disc = core.disc.val();
        let s = fc.s[i];
        if disc.abs() <= tols.root || gaps.iter().any(|&g| (g - s).abs() <= tols.root) {
            if !gaps.iter().any(|&g| (g - s).abs() <= tols.root) {
                gaps.push(s);
            }
            continue;
        }
        check_guards(
            fc.kind,
            adapted.eps_hat,
            adapted.jets[i].alpha.val(),
            adapted.jets[i].n_hat.val(),
            disc,
            s,
            tols,
        )?;
        let branch = if disc < 0.0 {
            EvoluteBranch::AdS
        } else {
            EvoluteBranch::Ps
        };
        let point = jv_val(&core.point).scale(opts.sign);
        let causal = crate::metric::inner(point, point);
        let target = if branch == EvoluteBranch::AdS { -1.0 } else { 1.0 };
        if (causal - target).abs() > tols.memb {
            return Err(Error::MembershipViolated {
                row: i + 1,
                what: format!("evolute point has <E,E> = {causal}, expected {target}"),
            });
        }
        samples.push(EvoluteSample {
            s,
            point,
            branch,
            disc,
            sign_choice: opts.sign,
            causal_sign: causal,
            idx: i,
        });
    }
    if samples.is_empty() {
        return Err(Error::DiscriminantVanishes { s: fc.s[0] });
    }
    if opts.continuity {
        for i in 1..samples.len() {
            let prev = samples[i - 1].point;
            let cur = samples[i].point;
            if (-cur - prev).flat_norm() < (cur - prev).flat_norm() {
                samples[i].point = -cur;
                samples[i].sign_choice = -samples[i].sign_choice;
            }
        }
    }
    gaps.sort_by(f64::total_cmp);
    Ok(EvoluteOutput { samples, gaps })
}

/// The AdS-evolute's own frame and curvature in closed form. All quantities
/// refer to the + sign choice of the defining formula.
pub struct EvoluteFrame {
    pub s: Vec<f64>,
    pub eta_vec: Vec<Vec4R22>,
    pub mu_e: Vec<Vec4R22>,
    pub alpha_e: Vec<f64>,
    pub ell_hat_e: Vec<f64>,
    pub n_hat_e: Vec<f64>,
    /// Largest framed-condition residual observed during validation.
    pub max_framed_residual: f64,
    pub(crate) alpha_e_jets: Vec<Jet>,
    pub(crate) indices: Vec<usize>,
}

pub(crate) struct EvoluteFrameJets {
    pub eta: JetVec4,
    pub mu_e: JetVec4,
    pub alpha_e: Jet,
    pub ell_hat_e: Jet,
    pub n_hat_e: Jet,
}

pub(crate) fn evolute_frame_jets(
    fc: &FramedCurve,
    adapted: &AdaptedFrameData,
    i: usize,
) -> EvoluteFrameJets {
    let aj = &adapted.jets[i];
    let gamma = &fc.sample_jets(i).gamma;
    let (alpha, lhat, nhat) = (aj.alpha, aj.ell_hat, aj.n_hat);
    let d = alpha * nhat.shift() - nhat * alpha.shift();
    let (ap, lhp, nhp) = (alpha.shift(), lhat.shift(), nhat.shift());
    let (app, nhpp) = (ap.shift(), nhp.shift());
    match fc.kind {
        CurveKind::Spacelike => {
            let eh = adapted.eps_hat;
            let a2 = alpha * alpha + eh * (nhat * nhat);
            let sa2 = (a2 * a2.val().signum()).sqrt();
            let eta = jv_scale(
                &jv_add(&jv_scale(gamma, alpha), &jv_scale(&aj.f2, eh * nhat)),
                sa2.recip(),
            );
            let r = lhat * lhat * nhat * nhat * (nhat * nhat + eh * (alpha * alpha)) - eh * d * d;
            let sr = r.sqrt();
            let mu_e = jv_scale(
                &jv_sub(
                    &jv_scale(&jv_sub(&jv_scale(gamma, nhat), &jv_scale(&aj.f2, alpha)), d),
                    &jv_scale(&aj.f1, lhat * nhat * (eh * (nhat * nhat) + alpha * alpha)),
                ),
                (sa2 * sr).recip(),
            );
            let num = nhat * (2.0 * lhat * ap * nhp + nhat * (ap * lhp - lhat * app))
                - alpha
                    * (-(lhat * lhat * lhat * nhat * nhat)
                        + nhat * lhp * nhp
                        + lhat * (2.0 * nhp * nhp - nhat * nhpp));
            EvoluteFrameJets {
                eta,
                mu_e,
                alpha_e: eh * sa2 * num / r,
                ell_hat_e: sa2,
                n_hat_e: -eh * sr / a2,
            }
        }
        CurveKind::Timelike => {
            let w2 = nhat * nhat - alpha * alpha;
            let sw = w2.sqrt();
            let eta = jv_scale(
                &jv_sub(&jv_scale(gamma, alpha), &jv_scale(&aj.f2, nhat)),
                sw.recip(),
            );
            let r = lhat * lhat * nhat * nhat * w2 - d * d;
            let sr = r.sqrt();
            let mu_e = jv_scale(
                &jv_sub(
                    &jv_scale(&jv_sub(&jv_scale(gamma, nhat), &jv_scale(&aj.f2, alpha)), d),
                    &jv_scale(&aj.f1, lhat * nhat * w2),
                ),
                (sw * sr).recip(),
            );
            let num = nhat * (2.0 * lhat * ap * nhp - nhat * (-(ap * lhp) + lhat * app))
                - alpha
                    * (lhat * lhat * lhat * nhat * nhat
                        + nhat * lhp * nhp
                        + lhat * (2.0 * nhp * nhp - nhat * nhpp));
            EvoluteFrameJets {
                eta,
                mu_e,
                alpha_e: sw * num / r,
                ell_hat_e: -sw,
                n_hat_e: sr / (alpha * alpha - nhat * nhat),
            }
        }
    }
}

/// Builds the evolute's frame and curvature along the AdS branch, validating
/// that `(E, mu, eta)` satisfies the framed conditions.
pub fn evolute_frame(
    fc: &FramedCurve,
    adapted: &AdaptedFrameData,
    output: &EvoluteOutput,
    tols: &Tolerances,
) -> Result<EvoluteFrame> {
    let _ = tols;
    if let Some(ps) = output.samples.iter().find(|s| s.branch == EvoluteBranch::Ps) {
        return Err(Error::BranchMismatch { s: ps.s });
    }
    let gate = if fc.depth > 3 { 1e-7 } else { 1e-4 };
    let mut frame = EvoluteFrame {
        s: Vec::new(),
        eta_vec: Vec::new(),
        mu_e: Vec::new(),
        alpha_e: Vec::new(),
        ell_hat_e: Vec::new(),
        n_hat_e: Vec::new(),
        max_framed_residual: 0.0,
        alpha_e_jets: Vec::new(),
        indices: Vec::new(),
    };
    for sample in &output.samples {
        let i = sample.idx;
        let j = evolute_frame_jets(fc, adapted, i);
        let core = evolute_core(fc, adapted, i);
        let ep = jv_shift(&core.point);
        let r1 = jinner(&ep, &fc.sample_jets(i).mu).val().abs();
        let r2 = jinner(&ep, &j.eta).val().abs();
        let res = r1.max(r2);
        if res > gate {
            return Err(Error::FramedConditionViolated {
                s: sample.s,
                what: "evolute framed condition <E', mu> / <E', eta>",
                residual: res,
            });
        }
        frame.max_framed_residual = frame.max_framed_residual.max(res);
        frame.s.push(sample.s);
        frame.eta_vec.push(jv_val(&j.eta));
        frame.mu_e.push(jv_val(&j.mu_e));
        frame.alpha_e.push(j.alpha_e.val());
        frame.ell_hat_e.push(j.ell_hat_e.val());
        frame.n_hat_e.push(j.n_hat_e.val());
        frame.alpha_e_jets.push(j.alpha_e);
        frame.indices.push(i);
    }
    Ok(frame)
}

/// The compact form of the AdS-evolute curvature for timelike input:
/// `alpha_E = -(alpha lhat / w + omega' / (1 - omega^2))` with
/// `omega = (n_hat alpha' - alpha n_hat') / (lhat n_hat w)`,
/// `w = sqrt(n_hat^2 - alpha^2)`.
pub fn alpha_evolute_compact(
    fc: &FramedCurve,
    adapted: &AdaptedFrameData,
    tols: &Tolerances,
) -> Result<Vec<f64>> {
    if fc.kind != CurveKind::Timelike {
        return Err(Error::Domain(
            "the compact curvature form is defined for timelike input".into(),
        ));
    }
    let mut out = Vec::with_capacity(fc.len());
    for i in 0..fc.len() {
        let aj = &adapted.jets[i];
        let (alpha, lhat, nhat) = (aj.alpha, aj.ell_hat, aj.n_hat);
        let w = (nhat * nhat - alpha * alpha).sqrt();
        let d = alpha * nhat.shift() - nhat * alpha.shift();
        let omega = -d / (lhat * nhat * w);
        if (omega.val().abs() - 1.0).abs() <= tols.root.max(1e-12) {
            return Err(Error::OmegaSingular { s: fc.s[i] });
        }
        let value = -(alpha * lhat / w + omega.shift() / (1.0 - omega * omega));
        out.push(value.val());
    }
    Ok(out)
}
