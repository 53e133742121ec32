//! Recovering a framed curve from curvature data (the existence theorem as a
//! fixed-step integrator) and deciding congruence of two framed curves (the
//! uniqueness theorem as an alignment-and-verify test).

use crate::config::Tolerances;
use crate::curve::{CurveKind, FrameJets, FramedCurve, JetVec4};
use crate::error::{Error, Result};
use crate::jet::{Jet, JET_LEN, JET_ORDER};
use crate::metric::{inner, triple_product, FrameMatrix, Vec4R22, ETA_DIAG};
use std::path::Path;
use std::sync::Arc;

type AnalyticField = Arc<dyn Fn(Jet) -> Jet + Send + Sync>;

/// A scalar curvature component: analytic closed form or uniform samples.
#[derive(Clone)]
pub enum ScalarField {
    Analytic(AnalyticField),
    Sampled { s0: f64, h: f64, values: Vec<f64> },
}

impl ScalarField {
    pub fn constant(c: f64) -> ScalarField {
        ScalarField::Analytic(Arc::new(move |_| Jet::constant(c)))
    }

    pub fn analytic(f: impl Fn(Jet) -> Jet + Send + Sync + 'static) -> ScalarField {
        ScalarField::Analytic(Arc::new(f))
    }

    /// Value and derivatives at `s`. Sampled fields use finite-difference
    /// jets at the nearest node, re-centered to `s`.
    pub fn eval_jet(&self, s: f64) -> Result<Jet> {
        match self {
            ScalarField::Analytic(f) => Ok(f(Jet::var(s))),
            ScalarField::Sampled { s0, h, values } => {
                let n = values.len();
                let idx = ((s - s0) / h).round();
                if idx < 0.0 || idx as usize >= n {
                    return Err(Error::Domain(format!(
                        "parameter {s} outside the sampled curvature range"
                    )));
                }
                let i = idx as usize;
                let width = 7.min(n);
                let start = i.saturating_sub(width / 2).min(n - width);
                let nodes: Vec<f64> = (start..start + width)
                    .map(|j| s0 + *h * j as f64)
                    .collect();
                let w = crate::curve::fornberg_weights(nodes[i - start], &nodes, 3);
                let mut c = [0.0; JET_LEN];
                for (j, wrow) in w.iter().enumerate() {
                    for k in 0..=3 {
                        let fact = [1.0, 1.0, 2.0, 6.0][k];
                        c[k] += wrow[k] * values[start + j] / fact;
                    }
                }
                Ok(Jet::from_coeffs(c).recenter(s - nodes[i - start]))
            }
        }
    }
}

/// Curvature data defining a framed curve up to congruence.
#[derive(Clone)]
pub struct CurvatureSpec {
    pub kind: CurveKind,
    /// Causal sign of v1 (spacelike kind only).
    pub eps: f64,
    pub alpha: ScalarField,
    pub ell: ScalarField,
    pub m: ScalarField,
    pub n: ScalarField,
}

impl CurvatureSpec {
    pub fn constant(kind: CurveKind, eps: f64, q: [f64; 4]) -> CurvatureSpec {
        CurvatureSpec {
            kind,
            eps,
            alpha: ScalarField::constant(q[0]),
            ell: ScalarField::constant(q[1]),
            m: ScalarField::constant(q[2]),
            n: ScalarField::constant(q[3]),
        }
    }

    /// Loads a `s,alpha,ell,m,n` CSV with `# kind=` (and for the spacelike
    /// kind `# eps=`) header comments.
    pub fn from_csv(path: &Path) -> Result<CurvatureSpec> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_csv(&text)
    }

    pub fn parse_csv(text: &str) -> Result<CurvatureSpec> {
        let mut kind = None;
        let mut eps = 1.0f64;
        let mut rows: Vec<[f64; 5]> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(c) = line.strip_prefix('#') {
                let c = c.trim();
                if let Some(k) = c.strip_prefix("kind=") {
                    kind = Some(match k.trim() {
                        "spacelike" => CurveKind::Spacelike,
                        "timelike" => CurveKind::Timelike,
                        other => {
                            return Err(Error::Parse {
                                line: lineno + 1,
                                msg: format!("unknown kind `{other}`"),
                            })
                        }
                    });
                }
                if let Some(e) = c.strip_prefix("eps=") {
                    eps = e.trim().parse().map_err(|_| Error::Parse {
                        line: lineno + 1,
                        msg: format!("cannot parse eps `{e}`"),
                    })?;
                }
                continue;
            }
            if line.starts_with('s') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 5 {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("expected 5 fields, got {}", fields.len()),
                });
            }
            let mut row = [0.0f64; 5];
            for (k, f) in fields.iter().enumerate() {
                row[k] = f.trim().parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: format!("cannot parse `{f}`"),
                })?;
            }
            rows.push(row);
        }
        let kind = kind.ok_or(Error::Parse {
            line: 0,
            msg: "missing `# kind=` comment".into(),
        })?;
        if rows.len() < 5 {
            return Err(Error::Parse {
                line: 0,
                msg: "need at least 5 curvature rows".into(),
            });
        }
        let h = rows[1][0] - rows[0][0];
        for (i, w) in rows.windows(2).enumerate() {
            let step = w[1][0] - w[0][0];
            if step <= 0.0 || ((step - h) / h).abs() > 1e-9 {
                return Err(Error::GridNotUniform { row: i + 2 });
            }
        }
        let col = |j: usize| ScalarField::Sampled {
            s0: rows[0][0],
            h,
            values: rows.iter().map(|r| r[j]).collect(),
        };
        Ok(CurvatureSpec {
            kind,
            eps,
            alpha: col(1),
            ell: col(2),
            m: col(3),
            n: col(4),
        })
    }

    /// Coefficient matrix of the moving-frame system at `s`, as jets.
    fn system_matrix(&self, s: f64) -> Result<[[Jet; 4]; 4]> {
        let a = self.alpha.eval_jet(s)?;
        let l = self.ell.eval_jet(s)?;
        let m = self.m.eval_jet(s)?;
        let n = self.n.eval_jet(s)?;
        let z = Jet::constant(0.0);
        Ok(match self.kind {
            CurveKind::Spacelike => [
                [z, z, z, a],
                [z, z, l, m],
                [z, l, z, n],
                [a, -(self.eps * m), self.eps * n, z],
            ],
            CurveKind::Timelike => [
                [z, z, z, a],
                [z, z, l, m],
                [z, -l, z, n],
                [-a, m, n, z],
            ],
        })
    }
}

fn mat_val(j: &[[Jet; 4]; 4]) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for (r, row) in j.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            out[r][c] = x.val();
        }
    }
    out
}

fn mat_mul(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = 0.0;
            for (k, bk) in b.iter().enumerate() {
                acc += a[i][k] * bk[j];
            }
            out[i][j] = acc;
        }
    }
    out
}

fn mat_axpy(y: &mut [[f64; 4]; 4], a: f64, x: &[[f64; 4]; 4]) {
    for i in 0..4 {
        for j in 0..4 {
            y[i][j] += a * x[i][j];
        }
    }
}

fn to_frame(m: &[[f64; 4]; 4]) -> FrameMatrix {
    FrameMatrix::from_rows([
        Vec4R22::from_array(m[0]),
        Vec4R22::from_array(m[1]),
        Vec4R22::from_array(m[2]),
        Vec4R22::from_array(m[3]),
    ])
}

fn from_frame(f: &FrameMatrix) -> [[f64; 4]; 4] {
    [
        f.row(0).as_array(),
        f.row(1).as_array(),
        f.row(2).as_array(),
        f.row(3).as_array(),
    ]
}

/// Builds frame jets at one sample from the frame values and the system
/// matrix jets: coefficient k+1 of the rows follows from the Cauchy product
/// of the system with coefficient k.
fn ode_jets(frame: &[[f64; 4]; 4], a: &[[Jet; 4]; 4]) -> FrameJets {
    let mut coef = [[[0.0f64; JET_LEN]; 4]; 4]; // [row][comp][k]
    for r in 0..4 {
        for c in 0..4 {
            coef[r][c][0] = frame[r][c];
        }
    }
    for k in 0..JET_ORDER {
        for r in 0..4 {
            for comp in 0..4 {
                let mut acc = 0.0;
                for j in 0..=k {
                    for (mid, arow) in a[r].iter().enumerate() {
                        acc += arow.coeff(j) * coef[mid][comp][k - j];
                    }
                }
                coef[r][comp][k + 1] = acc / (k + 1) as f64;
            }
        }
    }
    let row = |r: usize| -> JetVec4 {
        [
            Jet::from_coeffs(coef[r][0]),
            Jet::from_coeffs(coef[r][1]),
            Jet::from_coeffs(coef[r][2]),
            Jet::from_coeffs(coef[r][3]),
        ]
    };
    FrameJets {
        gamma: row(0),
        v1: row(1),
        v2: row(2),
        mu: row(3),
    }
}

/// Output of a frame reconstruction: the recovered framed curve plus the
/// per-sample conserved-quantity residuals.
pub struct ReconstructionResult {
    pub curve: FramedCurve,
    /// Max-abs deviation of the row Gram matrix from its initial value per
    /// sample (the conserved quantity of the flow; for frames with row
    /// signature `(-1,-1,+1,+1)` this is exactly `F^t eta F - eta`).
    pub orth_residual: Vec<f64>,
    /// `|det F - det F(s_0)|` per sample (the determinant is conserved by
    /// the flow; its initial value is +1 for timelike-kind frames and -1 for
    /// spacelike-kind frames).
    pub det_residual: Vec<f64>,
    pub init: FrameMatrix,
    pub renormalized: bool,
}

/// Integrates the moving-frame system `dF/ds = A(s) F` across `[a, b]` with
/// `n` samples by classical RK4 at step `(b-a)/(n-1)`, recovering the curve
/// as the first frame row. With `renormalize` set, each step is followed by
/// an eta-metric Gram-Schmidt projection of the rows.
pub fn reconstruct(
    spec: &CurvatureSpec,
    init: &FrameMatrix,
    x0: Vec4R22,
    range: (f64, f64),
    n: usize,
    renormalize: bool,
    tols: &Tolerances,
) -> Result<ReconstructionResult> {
    if n < 2 {
        return Err(Error::Domain("need at least 2 samples".into()));
    }
    let (a, b) = range;
    if !(a < b) {
        return Err(Error::Domain(format!("empty parameter range [{a}, {b}]")));
    }
    let orth = init.gram_residual();
    let det0 = init.det();
    if orth > 1e-10 || (det0.abs() - 1.0).abs() > 1e-10 {
        return Err(Error::InitNotOrthonormal {
            orth,
            det: (det0.abs() - 1.0).abs(),
        });
    }
    let mismatch = (x0 - init.row(0)).flat_norm();
    if mismatch > 1e-8 {
        return Err(Error::InitPointMismatch { dist: mismatch });
    }
    let mu_check = (init.row(3) - triple_product(init.row(0), init.row(1), init.row(2))).flat_norm();
    if mu_check > 1e-8 {
        return Err(Error::Domain(format!(
            "initial frame row 4 differs from gamma x v1 x v2 by {mu_check:.3e}"
        )));
    }
    if spec.kind == CurveKind::Spacelike {
        let eps_init = inner(init.row(1), init.row(1)).signum();
        if eps_init != spec.eps.signum() {
            return Err(Error::Domain(format!(
                "initial frame has <v1,v1> sign {eps_init}, spec says {}",
                spec.eps
            )));
        }
    }

    // row Gram matrix of the initial frame: the conserved quantity
    let gram0 = init.row_signature();
    let h = (b - a) / (n - 1) as f64;
    let mut f = from_frame(init);
    let mut jets = Vec::with_capacity(n);
    let mut orth_res = Vec::with_capacity(n);
    let mut det_res = Vec::with_capacity(n);
    let mut grid = Vec::with_capacity(n);

    for i in 0..n {
        let s = a + h * i as f64;
        grid.push(s);
        let a_jets = spec.system_matrix(s)?;
        jets.push(ode_jets(&f, &a_jets));
        let fm = to_frame(&f);
        let orth_i = fm.row_gram_residual(&gram0);
        orth_res.push(orth_i);
        det_res.push((fm.det() - det0).abs());
        let budget = tols.drift * (s - a).max(1.0);
        if !renormalize && orth_i > budget {
            return Err(Error::ToleranceExceeded {
                s,
                residual: orth_i,
            });
        }
        if i + 1 == n {
            break;
        }
        // classical RK4 on the matrix system
        let a0 = mat_val(&a_jets);
        let a_half = mat_val(&spec.system_matrix(s + 0.5 * h)?);
        let a1 = mat_val(&spec.system_matrix(s + h)?);
        let k1 = mat_mul(&a0, &f);
        let mut f2 = f;
        mat_axpy(&mut f2, 0.5 * h, &k1);
        let k2 = mat_mul(&a_half, &f2);
        let mut f3 = f;
        mat_axpy(&mut f3, 0.5 * h, &k2);
        let k3 = mat_mul(&a_half, &f3);
        let mut f4 = f;
        mat_axpy(&mut f4, h, &k3);
        let k4 = mat_mul(&a1, &f4);
        mat_axpy(&mut f, h / 6.0, &k1);
        mat_axpy(&mut f, h / 3.0, &k2);
        mat_axpy(&mut f, h / 3.0, &k3);
        mat_axpy(&mut f, h / 6.0, &k4);
        if renormalize {
            let mut fm = to_frame(&f);
            fm.eta_gram_schmidt();
            f = from_frame(&fm);
        }
    }

    let curve = FramedCurve::from_jets_unchecked(spec.kind, grid, jets, JET_ORDER, );
    Ok(ReconstructionResult {
        curve,
        orth_residual: orth_res,
        det_residual: det_res,
        init: *init,
        renormalized: renormalize,
    })
}

/// Maxima of the conserved-quantity residuals along a reconstruction.
pub fn drift_report(rr: &ReconstructionResult) -> (f64, f64) {
    let max_orth = rr.orth_residual.iter().cloned().fold(0.0, f64::max);
    let max_det = rr.det_residual.iter().cloned().fold(0.0, f64::max);
    (max_orth, max_det)
}

/// Looks for the linear isometry mapping `fc1` onto `fc2`.
///
/// The candidate is solved from the frames at the first sample
/// (`A = F2^t G F1 eta` with `G` the frames' row Gram matrix, which reduces
/// to `F2^t eta F1 eta` for frames with row signature `(-1,-1,+1,+1)`) and
/// then verified against every sample of `(gamma, v1, v2)` within
/// `tols.congr`; `Ok(None)` means the curves are not congruent at that
/// tolerance.
pub fn congruence_find(
    fc1: &FramedCurve,
    fc2: &FramedCurve,
    tols: &Tolerances,
) -> Result<Option<FrameMatrix>> {
    if fc1.kind != fc2.kind
        || fc1.len() != fc2.len()
        || fc1
            .s
            .iter()
            .zip(&fc2.s)
            .any(|(a, b)| (a - b).abs() > 1e-12)
    {
        return Err(Error::GridMismatch);
    }
    let diag_mat = |d: [f64; 4]| {
        FrameMatrix::from_rows([
            Vec4R22::basis(1).scale(d[0]),
            Vec4R22::basis(2).scale(d[1]),
            Vec4R22::basis(3).scale(d[2]),
            Vec4R22::basis(4).scale(d[3]),
        ])
    };
    let eta = diag_mat(ETA_DIAG);
    let f1 = fc1.frame(0);
    let f2 = fc2.frame(0);
    let gram = diag_mat(f1.row_signature());
    let a = f2.transpose().matmul(&gram).matmul(&f1).matmul(&eta);
    // verify group membership and the pointwise mapping
    let so_tol = tols.congr.max(1e-10);
    if a.orth_residual() > so_tol || (a.det() - 1.0).abs() > so_tol {
        return Ok(None);
    }
    for i in 0..fc1.len() {
        for (u, w) in [
            (fc1.gamma(i), fc2.gamma(i)),
            (fc1.v1(i), fc2.v1(i)),
            (fc1.v2(i), fc2.v2(i)),
        ] {
            if (a.apply(u) - w).flat_norm() > tols.congr {
                return Ok(None);
            }
        }
    }
    Ok(Some(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSource;
    use crate::framing::framed_curvature;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    fn circle_init() -> FrameMatrix {
        FrameMatrix::from_rows([
            Vec4R22::new(1.0, 0.0, 0.0, 0.0),
            Vec4R22::basis(3),
            Vec4R22::basis(4),
            Vec4R22::new(0.0, 1.0, 0.0, 0.0),
        ])
    }

    #[test]
    fn constant_timelike_curvature_gives_circle() {
        let spec = CurvatureSpec::constant(CurveKind::Timelike, 1.0, [1.0, 0.0, 0.0, 0.0]);
        let init = circle_init();
        let rr = reconstruct(&spec, &init, init.row(0), (0.0, 1.0), 1001, false, &tols()).unwrap();
        for (i, &s) in rr.curve.s.iter().enumerate() {
            let expect = Vec4R22::new(s.cos(), s.sin(), 0.0, 0.0);
            assert!((rr.curve.gamma(i) - expect).flat_norm() < 1e-8);
        }
    }

    #[test]
    fn zero_curvature_is_constant_frame() {
        let spec = CurvatureSpec::constant(CurveKind::Timelike, 1.0, [0.0; 4]);
        let init = circle_init();
        let rr = reconstruct(&spec, &init, init.row(0), (0.0, 1.0), 101, false, &tols()).unwrap();
        let (orth, det) = drift_report(&rr);
        assert_eq!((orth, det), (0.0, 0.0));
        for i in 0..rr.curve.len() {
            assert!((rr.curve.gamma(i) - init.row(0)).flat_norm() == 0.0);
        }
    }

    #[test]
    fn rejects_bad_init() {
        let spec = CurvatureSpec::constant(CurveKind::Timelike, 1.0, [1.0, 0.0, 0.0, 0.0]);
        let mut rows = circle_init().rows();
        rows[1] = rows[1].scale(1.0 + 1e-6);
        let bad = FrameMatrix::from_rows(rows);
        assert!(matches!(
            reconstruct(&spec, &bad, bad.row(0), (0.0, 1.0), 11, false, &tols()),
            Err(Error::InitNotOrthonormal { .. })
        ));
        let init = circle_init();
        assert!(matches!(
            reconstruct(
                &spec,
                &init,
                init.row(0) + Vec4R22::basis(2).scale(1e-3),
                (0.0, 1.0),
                11,
                false,
                &tols()
            ),
            Err(Error::InitPointMismatch { .. })
        ));
    }

    #[test]
    fn drift_grows_with_step_at_fourth_order() {
        let spec = CurvatureSpec::constant(CurveKind::Timelike, 1.0, [1.0, 1.0, 3.0 / SQRT2, 0.0]);
        let init = paper_init();
        let mut loose = tols();
        loose.set("drift", 1.0).unwrap();
        let fine = reconstruct(&spec, &init, init.row(0), (0.0, 1.0), 1001, false, &loose).unwrap();
        let coarse = reconstruct(&spec, &init, init.row(0), (0.0, 1.0), 11, false, &loose).unwrap();
        let (orth_fine, _) = drift_report(&fine);
        let (orth_coarse, _) = drift_report(&coarse);
        assert!(orth_fine < 1e-10, "fine drift {orth_fine:.3e}");
        // fourth-order scaling, allowing for the rounding floor of the fine run
        assert!(
            orth_coarse > 1e4 * orth_fine.max(1e-15),
            "coarse {orth_coarse:.3e} vs fine {orth_fine:.3e}"
        );
        // renormalization bounds the coarse drift
        let renorm = reconstruct(&spec, &init, init.row(0), (0.0, 1.0), 11, true, &loose).unwrap();
        let (orth_renorm, _) = drift_report(&renorm);
        assert!(orth_renorm <= orth_coarse);
    }

    fn paper_init() -> FrameMatrix {
        FrameMatrix::from_rows([
            Vec4R22::new(SQRT2, 1.0, 0.0, SQRT2),
            Vec4R22::new(1.0, SQRT2, 0.0, 2.0),
            Vec4R22::new(0.0, -SQRT2, -SQRT2, -1.0),
            Vec4R22::new(0.0, 2.0, 1.0, SQRT2),
        ])
    }

    #[test]
    fn timelike_example_reconstructs_to_printed_curve() {
        let spec = CurvatureSpec::constant(CurveKind::Timelike, 1.0, [1.0, 1.0, 3.0 / SQRT2, 0.0]);
        let init = paper_init();
        let rr = reconstruct(&spec, &init, init.row(0), (0.0, 1.0), 1001, false, &tols()).unwrap();
        let reference = CurveSource::from_catalog("timelike-example")
            .unwrap()
            .sample(0.0, 1.0, 1001, &tols())
            .unwrap();
        let mut worst = 0.0f64;
        for i in 0..rr.curve.len() {
            worst = worst.max((rr.curve.gamma(i) - reference.gamma(i)).flat_norm());
        }
        assert!(worst < 1e-6, "max deviation {worst:.3e}");
        // uniqueness: congruence against the catalog curve is the identity
        let a = congruence_find(&rr.curve, &reference, &tols())
            .unwrap()
            .expect("curves should be congruent");
        let dev = (0..4)
            .map(|i| (a.row(i) - FrameMatrix::identity().row(i)).flat_norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-6, "identity deviation {dev:.3e}");
    }

    #[test]
    fn round_trip_curvature_extraction() {
        // framed_curvature(reconstruct(spec)) reproduces the spec pointwise
        let spec = CurvatureSpec {
            kind: CurveKind::Spacelike,
            eps: -1.0,
            alpha: ScalarField::analytic(|s| s.sin() + 0.5),
            ell: ScalarField::analytic(|s| (s * 0.7).cos() * 0.8),
            m: ScalarField::analytic(|s| s.cos() * 0.9 + 0.2),
            n: ScalarField::analytic(|s| (s * 1.3).sin() * 0.4),
        };
        let init = FrameMatrix::from_rows([
            -Vec4R22::basis(1),
            -Vec4R22::basis(2),
            Vec4R22::basis(3),
            -Vec4R22::basis(4),
        ]);
        assert!(init.orth_residual() < 1e-15);
        let rr = reconstruct(&spec, &init, init.row(0), (0.0, 1.0), 1001, false, &tols()).unwrap();
        let cq = framed_curvature(&rr.curve);
        for (i, &s) in rr.curve.s.iter().enumerate() {
            assert!((cq.alpha[i] - (s.sin() + 0.5)).abs() < 1e-6);
            assert!((cq.ell[i] - (s * 0.7).cos() * 0.8).abs() < 1e-6);
            assert!((cq.m[i] - (s.cos() * 0.9 + 0.2)).abs() < 1e-6);
            assert!((cq.n[i] - (s * 1.3).sin() * 0.4).abs() < 1e-6);
        }
        // spacelike frames conserve det = -1
        let (_, det_drift) = drift_report(&rr);
        assert!(det_drift < 1e-10);
        assert!((rr.curve.frame(0).det() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn congruence_recovers_block_rotation() {
        let src = CurveSource::from_catalog("timelike-example").unwrap();
        let fc = src.sample(0.0, 1.0, 101, &tols()).unwrap();
        let t = 0.7f64;
        let a = FrameMatrix::from_rows([
            Vec4R22::new(t.cos(), -t.sin(), 0.0, 0.0),
            Vec4R22::new(t.sin(), t.cos(), 0.0, 0.0),
            Vec4R22::basis(3),
            Vec4R22::basis(4),
        ]);
        let moved = fc.transform(&a);
        let found = congruence_find(&fc, &moved, &tols())
            .unwrap()
            .expect("congruent by construction");
        for i in 0..4 {
            assert!((found.row(i) - a.row(i)).flat_norm() < 1e-10);
        }
        // identity against itself
        let id = congruence_find(&fc, &fc, &tols()).unwrap().unwrap();
        for i in 0..4 {
            assert!((id.row(i) - FrameMatrix::identity().row(i)).flat_norm() < 1e-12);
        }
        // curvature is invariant under the isometry
        let cq1 = framed_curvature(&fc);
        let cq2 = framed_curvature(&moved);
        for i in 0..fc.len() {
            assert!((cq1.alpha[i] - cq2.alpha[i]).abs() < 1e-10);
            assert!((cq1.ell[i] - cq2.ell[i]).abs() < 1e-10);
            assert!((cq1.m[i] - cq2.m[i]).abs() < 1e-10);
            assert!((cq1.n[i] - cq2.n[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn congruence_grid_mismatch() {
        let src = CurveSource::from_catalog("timelike-example").unwrap();
        let a = src.sample(0.0, 1.0, 101, &tols()).unwrap();
        let b = src.sample(0.0, 1.0, 51, &tols()).unwrap();
        assert!(matches!(
            congruence_find(&a, &b, &tols()),
            Err(Error::GridMismatch)
        ));
    }

    #[test]
    fn sampled_scalar_field_jets() {
        let h = 0.01;
        let values: Vec<f64> = (0..201).map(|i| (i as f64 * h).sin()).collect();
        let f = ScalarField::Sampled {
            s0: 0.0,
            h,
            values,
        };
        let j = f.eval_jet(1.0).unwrap();
        assert!((j.val() - 1.0f64.sin()).abs() < 1e-12);
        assert!((j.d(1) - 1.0f64.cos()).abs() < 1e-9);
        assert!((j.d(2) + 1.0f64.sin()).abs() < 1e-6);
        // off-node evaluation re-centers the local model
        let j = f.eval_jet(1.0 + 0.004).unwrap();
        assert!((j.val() - 1.004f64.sin()).abs() < 1e-9);
    }
}
