//! Deterministic file exporters: CSV tables, JSON reports, OBJ meshes, and
//! gnuplot scripts. All numeric fields are printed with 17 significant
//! digits so identical inputs produce byte-identical files.

use crate::curve::FramedCurve;
use crate::error::Result;
use crate::evolute::{EvoluteBranch, EvoluteFrame, EvoluteOutput};
use crate::focal::{FocalGrid, SingularLocusPoint};
use crate::framing::{AdaptedFrameData, CurvatureQuad};
use crate::metric::{hopf_project, HopfPoint, PseudoSphere, Vec4R22};
use crate::reconstruction::ReconstructionResult;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// 17-significant-digit float formatting used by every exporter.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn push_fields(line: &mut String, fields: &[f64]) {
    for (i, x) in fields.iter().enumerate() {
        if i > 0 {
            line.push(',');
        }
        line.push_str(&fmt17(*x));
    }
    line.push('\n');
}

/// Curvature table: `s,alpha,ell,m,n,ell_hat,n_hat` plus sign and
/// singular-parameter comments. Adapted columns are blank when the adapted
/// frame is unavailable.
pub fn curvature_csv(
    cq: &CurvatureQuad,
    adapted: Option<&AdaptedFrameData>,
    singular: &[f64],
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# eps={}", cq.eps);
    if let Some(ad) = adapted {
        let _ = writeln!(out, "# eps_hat={}", ad.eps_hat);
    } else {
        let _ = writeln!(out, "# adapted frame degenerate; hat columns empty");
    }
    let list = singular
        .iter()
        .map(|s| fmt17(*s))
        .collect::<Vec<_>>()
        .join(",");
    let _ = writeln!(out, "# singular_parameters={list}");
    out.push_str("s,alpha,ell,m,n,ell_hat,n_hat\n");
    for i in 0..cq.s.len() {
        let mut line = String::new();
        push_fields(
            &mut line,
            &[cq.s[i], cq.alpha[i], cq.ell[i], cq.m[i], cq.n[i]],
        );
        line.pop(); // drop newline to append optional columns
        match adapted {
            Some(ad) => {
                let _ = write!(line, ",{},{}", fmt17(ad.ell_hat[i]), fmt17(ad.n_hat[i]));
            }
            None => line.push_str(",,"),
        }
        line.push('\n');
        out.push_str(&line);
    }
    out
}

/// Evolute table: `s,e1,e2,e3,e4,branch,disc,sign` with gap comments.
pub fn evolute_csv(output: &EvoluteOutput) -> String {
    let mut out = String::new();
    if !output.gaps.is_empty() {
        let list = output
            .gaps
            .iter()
            .map(|s| fmt17(*s))
            .collect::<Vec<_>>()
            .join(",");
        let _ = writeln!(out, "# discriminant_gaps={list}");
    }
    out.push_str("s,e1,e2,e3,e4,branch,disc,sign\n");
    for sm in &output.samples {
        let p = sm.point.as_array();
        let branch = match sm.branch {
            EvoluteBranch::AdS => "ads",
            EvoluteBranch::Ps => "ps",
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{branch},{},{}",
            fmt17(sm.s),
            fmt17(p[0]),
            fmt17(p[1]),
            fmt17(p[2]),
            fmt17(p[3]),
            fmt17(sm.disc),
            fmt17(sm.sign_choice),
        );
    }
    out
}

#[derive(Serialize)]
struct EvoluteFrameJson {
    s: Vec<f64>,
    alpha_e: Vec<f64>,
    ell_hat_e: Vec<f64>,
    n_hat_e: Vec<f64>,
    eta: Vec<[f64; 4]>,
    mu_e: Vec<[f64; 4]>,
    max_framed_residual: f64,
}

/// Evolute-frame curvatures as JSON.
pub fn evolute_frame_json(frame: &EvoluteFrame) -> Result<String> {
    let data = EvoluteFrameJson {
        s: frame.s.clone(),
        alpha_e: frame.alpha_e.clone(),
        ell_hat_e: frame.ell_hat_e.clone(),
        n_hat_e: frame.n_hat_e.clone(),
        eta: frame.eta_vec.iter().map(|v| v.as_array()).collect(),
        mu_e: frame.mu_e.iter().map(|v| v.as_array()).collect(),
        max_framed_residual: frame.max_framed_residual,
    };
    Ok(serde_json::to_string_pretty(&data)?)
}

/// Plot-coordinate projection for mesh and table exports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    /// Hyperbolic Hopf map; valid for AdS^3-valued data only.
    Hopf,
    /// Drop the fourth coordinate.
    Drop4,
}

pub fn project(p: Vec4R22, proj: Projection, tol: f64) -> Result<[f64; 3]> {
    match proj {
        Projection::Hopf => {
            let h = hopf_project(p, tol)?;
            Ok([h.y1, h.y2, h.y3])
        }
        Projection::Drop4 => {
            let a = p.as_array();
            Ok([a[0], a[1], a[2]])
        }
    }
}

/// Wavefront OBJ mesh of a focal grid: one vertex per grid point in the
/// chosen projection, quads split into triangles.
pub fn focal_obj(grid: &FocalGrid, proj: Projection, tol: f64) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# focal surface case {} on {}",
        grid.case,
        match grid.sphere {
            PseudoSphere::AdS3 => "AdS3",
            PseudoSphere::S32 => "S3_2",
            PseudoSphere::Nullcone => "nullcone",
        }
    );
    let (ns, nt) = (grid.s.len(), grid.theta.len());
    let _ = writeln!(out, "# grid {ns}x{nt}");
    for p in &grid.points {
        let [x, y, z] = project(*p, proj, tol)?;
        let _ = writeln!(out, "v {} {} {}", fmt17(x), fmt17(y), fmt17(z));
    }
    for i in 0..ns - 1 {
        for j in 0..nt - 1 {
            let a = i * nt + j + 1;
            let b = i * nt + j + 2;
            let c = (i + 1) * nt + j + 2;
            let d = (i + 1) * nt + j + 1;
            let _ = writeln!(out, "f {a} {b} {c}");
            let _ = writeln!(out, "f {a} {c} {d}");
        }
    }
    Ok(out)
}

/// Singular-locus table: `s,theta0,class,alpha_e,alpha_e_prime`.
pub fn locus_csv(locus: &[SingularLocusPoint]) -> String {
    let mut out = String::from("s,theta0,class,alpha_e,alpha_e_prime\n");
    for p in locus {
        let th = p.theta0.map(fmt17).unwrap_or_default();
        let ae = p.alpha_e.map(fmt17).unwrap_or_default();
        let aep = p.alpha_e_prime.map(fmt17).unwrap_or_default();
        let _ = writeln!(out, "{},{th},{},{ae},{aep}", fmt17(p.s0), p.class);
    }
    out
}

/// Hopf projection table: `s,y1,y2,y3`.
pub fn hopf_csv(rows: &[(f64, HopfPoint)]) -> String {
    let mut out = String::from("s,y1,y2,y3\n");
    for (s, h) in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt17(*s),
            fmt17(h.y1),
            fmt17(h.y2),
            fmt17(h.y3)
        );
    }
    out
}

/// Gnuplot script plotting a Hopf CSV as a 3D line.
pub fn hopf_gnuplot(csv_name: &str, title: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "set datafile separator ','");
    let _ = writeln!(out, "set ticslevel 0");
    let _ = writeln!(out, "set xlabel 'y1'");
    let _ = writeln!(out, "set ylabel 'y2'");
    let _ = writeln!(out, "set zlabel 'y3'");
    let _ = writeln!(
        out,
        "splot '{csv_name}' every ::1 using 2:3:4 with lines title '{title}'"
    );
    let _ = writeln!(out, "pause -1");
    out
}

/// Framed-curve table reusing the sampled-curve CSV schema.
pub fn framed_curve_csv(fc: &FramedCurve) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# kind={}", fc.kind);
    out.push_str("s,g1,g2,g3,g4,v11,v12,v13,v14,v21,v22,v23,v24\n");
    for i in 0..fc.len() {
        let mut line = String::new();
        let mut fields = vec![fc.s[i]];
        for v in [fc.gamma(i), fc.v1(i), fc.v2(i)] {
            fields.extend(v.as_array());
        }
        push_fields(&mut line, &fields);
        out.push_str(&line);
    }
    out
}

#[derive(Serialize)]
struct DriftJson {
    max_orth: f64,
    max_det: f64,
    renormalized: bool,
    samples: usize,
}

/// Drift report of a reconstruction as JSON.
pub fn drift_json(rr: &ReconstructionResult) -> Result<String> {
    let (max_orth, max_det) = crate::reconstruction::drift_report(rr);
    Ok(serde_json::to_string_pretty(&DriftJson {
        max_orth,
        max_det,
        renormalized: rr.renormalized,
        samples: rr.curve.len(),
    })?)
}

/// Frame-init JSON schema: four 4-arrays.
#[derive(Serialize, Deserialize)]
pub struct FrameInitJson {
    pub gamma: [f64; 4],
    pub v1: [f64; 4],
    pub v2: [f64; 4],
    pub mu: [f64; 4],
}

impl FrameInitJson {
    pub fn to_frame(&self) -> crate::metric::FrameMatrix {
        crate::metric::FrameMatrix::from_rows([
            Vec4R22::from_array(self.gamma),
            Vec4R22::from_array(self.v1),
            Vec4R22::from_array(self.v2),
            Vec4R22::from_array(self.mu),
        ])
    }

    pub fn from_frame(f: &crate::metric::FrameMatrix) -> Self {
        FrameInitJson {
            gamma: f.row(0).as_array(),
            v1: f.row(1).as_array(),
            v2: f.row(2).as_array(),
            mu: f.row(3).as_array(),
        }
    }
}
