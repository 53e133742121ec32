//! Command-line surface over the library: curve analysis, evolutes, focal
//! surfaces, reconstruction, and Hopf-projection exports.
//!
//! Exit codes: 0 success, 2 input validation, 3 mathematical degeneracy,
//! 4 I/O.

use crate::config::Tolerances;
use crate::curve::{catalog, catalog_lookup, jinner, load_sampled_csv, CurveSource};
use crate::error::{Error, Result};
use crate::evolute::{evolute, evolute_frame, EvoluteOptions};
use crate::export::{self, FrameInitJson, Projection};
use crate::focal::{focal_singular_locus, focal_surface, FocalCase};
use crate::framing::{adapted_frame, framed_curvature, singular_parameters, HyperbolicPair};
use crate::jet::Jet;
use crate::metric::hopf_project;
use crate::reconstruction::{reconstruct, CurvatureSpec, ScalarField};
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "adscurve",
    about = "Moving frames, evolutes, and focal surfaces of framed curves in anti-de Sitter 3-space",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone)]
pub struct CommonArgs {
    /// Catalog curve name (see `adscurve catalog`).
    #[arg(long, conflicts_with = "input")]
    pub curve: Option<String>,

    /// CSV file with sampled curve data (`s,g1..g4,v11..v14,v21..v24`).
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// Parameter range `a:b`.
    #[arg(long, default_value = "-1:1", allow_hyphen_values = true, value_parser = parse_range)]
    pub range: (f64, f64),

    /// Number of parameter samples.
    #[arg(long, default_value_t = 201)]
    pub samples: usize,

    /// Tolerance override `KEY=VAL`; repeatable. Mirrors `ADSCURVE_TOL_KEY`.
    #[arg(long = "tol", value_name = "KEY=VAL")]
    pub tol: Vec<String>,

    /// Output path; stdout when omitted (commands producing several files
    /// require it).
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Output format.
    #[arg(long, default_value = "csv")]
    pub format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Obj,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ProjArg {
    Hopf,
    Drop4,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum HopfTarget {
    Curve,
    Evolute,
}

#[derive(Subcommand)]
pub enum Command {
    /// Curvature quadruple, adapted curvatures, and singular parameters.
    /// CSV columns: s,alpha,ell,m,n,ell_hat,n_hat (hat columns are empty
    /// when the adapted frame degenerates); singular parameters and the
    /// causal signs arrive as `#` comments.
    Analyze {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Evolute samples with branch and discriminant data.
    /// CSV columns: s,e1,e2,e3,e4,branch,disc,sign.
    Evolute {
        #[command(flatten)]
        common: CommonArgs,

        /// Sign choice in the defining formula.
        #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
        sign: f64,

        /// Flip signs per sample to minimize jumps.
        #[arg(long)]
        continuity: bool,
    },
    /// Focal-surface mesh (OBJ) plus singular-locus table (CSV).
    Focal {
        #[command(flatten)]
        common: CommonArgs,

        /// Focal family: f1 | f2:cosh-sinh | f2:sinh-cosh | f3 | f4 | f5.
        #[arg(long, value_parser = parse_case)]
        case: FocalCase,

        /// Angle range `a:b`.
        #[arg(long = "theta-range", default_value = "-1:1", allow_hyphen_values = true, value_parser = parse_range)]
        theta_range: (f64, f64),

        /// Surface grid `NxM` (parameter samples x angle samples).
        #[arg(long, default_value = "101x41", value_parser = parse_grid)]
        grid: (usize, usize),

        /// Plot projection for mesh vertices.
        #[arg(long, default_value = "drop4")]
        proj: ProjArg,
    },
    /// Integrate a framed curve from curvature data.
    Reconstruct {
        #[command(flatten)]
        common: CommonArgs,

        /// Frame-init JSON (`{"gamma":[..],"v1":[..],"v2":[..],"mu":[..]}`).
        /// Defaults to the catalog curve's frame at the range start.
        #[arg(long)]
        init: Option<PathBuf>,

        /// Re-orthonormalize the frame after every step.
        #[arg(long)]
        renormalize: bool,
    },
    /// Hopf-projection table (`s,y1,y2,y3`) and gnuplot script.
    Hopf {
        #[command(flatten)]
        common: CommonArgs,

        /// Project the curve itself or its evolute.
        #[arg(long, default_value = "curve")]
        of: HopfTarget,

        /// Sign choice for the evolute target.
        #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
        sign: f64,

        /// Continuity pass for the evolute target.
        #[arg(long)]
        continuity: bool,
    },
    /// List the built-in curve catalog.
    Catalog,
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected a:b, got `{s}`"))?;
    let a: f64 = a.trim().parse().map_err(|_| format!("bad number `{a}`"))?;
    let b: f64 = b.trim().parse().map_err(|_| format!("bad number `{b}`"))?;
    if !(a < b) {
        return Err(format!("empty range {a}:{b}"));
    }
    Ok((a, b))
}

fn parse_grid(s: &str) -> std::result::Result<(usize, usize), String> {
    let (n, m) = s
        .split_once('x')
        .ok_or_else(|| format!("expected NxM, got `{s}`"))?;
    let n: usize = n.trim().parse().map_err(|_| format!("bad count `{n}`"))?;
    let m: usize = m.trim().parse().map_err(|_| format!("bad count `{m}`"))?;
    Ok((n, m))
}

fn parse_sign(s: &str) -> std::result::Result<f64, String> {
    match s {
        "+" | "+1" | "1" => Ok(1.0),
        "-" | "-1" => Ok(-1.0),
        _ => Err(format!("expected + or -, got `{s}`")),
    }
}

fn parse_case(s: &str) -> std::result::Result<FocalCase, String> {
    match s {
        "f1" => Ok(FocalCase::F1),
        "f2:cosh-sinh" => Ok(FocalCase::F2(HyperbolicPair::CoshSinh)),
        "f2:sinh-cosh" => Ok(FocalCase::F2(HyperbolicPair::SinhCosh)),
        "f3" => Ok(FocalCase::F3),
        "f4" => Ok(FocalCase::F4),
        "f5" => Ok(FocalCase::F5),
        _ => Err(format!(
            "expected f1|f2:cosh-sinh|f2:sinh-cosh|f3|f4|f5, got `{s}`"
        )),
    }
}

fn build_tolerances(overrides: &[String]) -> Result<Tolerances> {
    let mut tols = Tolerances::default().with_env()?;
    for item in overrides {
        let (k, v) = item.split_once('=').ok_or_else(|| {
            Error::Domain(format!("expected KEY=VAL tolerance override, got `{item}`"))
        })?;
        let value: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("cannot parse tolerance value `{v}`")))?;
        tols.set(k.trim(), value)?;
    }
    Ok(tols)
}

fn resolve_source(common: &CommonArgs, tols: &Tolerances) -> Result<CurveSource> {
    match (&common.curve, &common.input) {
        (Some(name), None) => CurveSource::from_catalog(name),
        (None, Some(path)) => load_sampled_csv(path, tols),
        (None, None) => Err(Error::Domain(
            "select a curve with --curve NAME or --input FILE".into(),
        )),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn aux_path(primary: &Path, suffix: &str) -> PathBuf {
    let mut name = primary.file_name().unwrap_or_default().to_os_string();
    name.push(suffix);
    primary.with_file_name(name)
}

fn cmd_analyze(common: &CommonArgs) -> Result<()> {
    let tols = build_tolerances(&common.tol)?;
    let source = resolve_source(common, &tols)?;
    let fc = source.sample(common.range.0, common.range.1, common.samples, &tols)?;
    let cq = framed_curvature(&fc);
    let singular = singular_parameters(&cq, &tols);
    // the adapted frame is optional enrichment here: curves like the trivial
    // circle have no adapted frame but still analyze cleanly
    let adapted = adapted_frame(&fc, &tols).ok();
    match common.format {
        Format::Csv => emit(&common.out, &export::curvature_csv(&cq, adapted.as_ref(), &singular)),
        Format::Json => {
            let value = serde_json::json!({
                "s": cq.s,
                "alpha": cq.alpha,
                "ell": cq.ell,
                "m": cq.m,
                "n": cq.n,
                "eps": cq.eps,
                "eps_hat": adapted.as_ref().map(|a| a.eps_hat),
                "ell_hat": adapted.as_ref().map(|a| &a.ell_hat),
                "n_hat": adapted.as_ref().map(|a| &a.n_hat),
                "singular_parameters": singular,
            });
            emit(&common.out, &format!("{:#}\n", value))
        }
        Format::Obj => Err(Error::Domain("analyze does not produce meshes".into())),
    }
}

fn cmd_evolute(common: &CommonArgs, sign: f64, continuity: bool) -> Result<()> {
    let tols = build_tolerances(&common.tol)?;
    let source = resolve_source(common, &tols)?;
    let fc = source.sample(common.range.0, common.range.1, common.samples, &tols)?;
    let adapted = adapted_frame(&fc, &tols)?;
    let opts = EvoluteOptions { sign, continuity };
    let output = evolute(&fc, &adapted, &opts, &tols)?;
    match common.format {
        Format::Csv => emit(&common.out, &export::evolute_csv(&output)),
        Format::Json => {
            let frame = evolute_frame(&fc, &adapted, &output, &tols).ok();
            let samples: Vec<_> = output
                .samples
                .iter()
                .map(|sm| {
                    serde_json::json!({
                        "s": sm.s,
                        "point": sm.point.as_array(),
                        "branch": if sm.branch == crate::evolute::EvoluteBranch::AdS { "ads" } else { "ps" },
                        "disc": sm.disc,
                        "sign": sm.sign_choice,
                    })
                })
                .collect();
            let frame_json = match &frame {
                Some(f) => serde_json::from_str::<serde_json::Value>(&export::evolute_frame_json(f)?)?,
                None => serde_json::Value::Null,
            };
            let value = serde_json::json!({
                "samples": samples,
                "gaps": output.gaps,
                "frame": frame_json,
            });
            emit(&common.out, &format!("{:#}\n", value))
        }
        Format::Obj => Err(Error::Domain("evolute does not produce meshes".into())),
    }
}

fn cmd_focal(
    common: &CommonArgs,
    case: FocalCase,
    theta_range: (f64, f64),
    grid: (usize, usize),
    proj: ProjArg,
) -> Result<()> {
    let tols = build_tolerances(&common.tol)?;
    if common.format == Format::Json {
        return Err(Error::Domain("focal emits an OBJ mesh and a CSV locus table".into()));
    }
    let out = common.out.as_ref().ok_or_else(|| {
        Error::Domain("focal writes a mesh and a locus table; --out PATH is required".into())
    })?;
    let source = resolve_source(common, &tols)?;
    let fc = source.sample(common.range.0, common.range.1, grid.0, &tols)?;
    let adapted = adapted_frame(&fc, &tols)?;
    let surface = focal_surface(&fc, &adapted, case, theta_range, grid.1, &tols)?;
    let locus = focal_singular_locus(&fc, &adapted, case, &tols)?;
    let projection = match proj {
        ProjArg::Hopf => Projection::Hopf,
        ProjArg::Drop4 => Projection::Drop4,
    };
    std::fs::write(out, export::focal_obj(&surface, projection, tols.hopf)?)?;
    std::fs::write(aux_path(out, ".locus.csv"), export::locus_csv(&locus))?;
    Ok(())
}

/// Curvature fields of a catalog curve, evaluated through its closed forms.
fn catalog_curvature_spec(name: &str) -> Result<CurvatureSpec> {
    let entry = catalog_lookup(name)?;
    let source = CurveSource::Catalog(entry);
    let j0 = source.frame_jets_at(0.0)?;
    let eps = jinner(&j0.v1, &j0.v1).val().signum();
    let kind = entry.kind;
    let field = move |pick: fn(&crate::framing::CurvatureJets) -> Jet| {
        ScalarField::analytic(move |sj: Jet| {
            let jets = CurveSource::Catalog(entry)
                .frame_jets_at(sj.val())
                .expect("catalog evaluation is total");
            pick(&crate::framing::curvature_jets(kind, eps, &jets))
        })
    };
    Ok(CurvatureSpec {
        kind,
        eps,
        alpha: field(|c| c.alpha),
        ell: field(|c| c.ell),
        m: field(|c| c.m),
        n: field(|c| c.n),
    })
}

fn cmd_reconstruct(common: &CommonArgs, init: &Option<PathBuf>, renormalize: bool) -> Result<()> {
    if common.format != Format::Csv {
        return Err(Error::Domain(
            "reconstruct emits a CSV table (plus a JSON drift report with --out)".into(),
        ));
    }
    let tols = build_tolerances(&common.tol)?;
    let (spec, default_init) = match (&common.curve, &common.input) {
        (Some(name), None) => {
            let spec = catalog_curvature_spec(name)?;
            let fc = CurveSource::from_catalog(name)?.sample(
                common.range.0,
                common.range.1,
                common.samples.max(5),
                &tols,
            )?;
            (spec, Some(fc.frame(0)))
        }
        (None, Some(path)) => (CurvatureSpec::from_csv(path)?, None),
        _ => {
            return Err(Error::Domain(
                "select curvature data with --curve NAME or --input FILE".into(),
            ))
        }
    };
    let frame = match init {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str::<FrameInitJson>(&text)?.to_frame()
        }
        None => default_init.ok_or_else(|| {
            Error::Domain("--init FILE is required with --input curvature data".into())
        })?,
    };
    let rr = reconstruct(
        &spec,
        &frame,
        frame.row(0),
        common.range,
        common.samples,
        renormalize,
        &tols,
    )?;
    let (max_orth, max_det) = crate::reconstruction::drift_report(&rr);
    let mut csv = format!(
        "# max_orth={}\n# max_det={}\n",
        export::fmt17(max_orth),
        export::fmt17(max_det)
    );
    csv.push_str(&export::framed_curve_csv(&rr.curve));
    emit(&common.out, &csv)?;
    if let Some(path) = &common.out {
        std::fs::write(aux_path(path, ".drift.json"), export::drift_json(&rr)?)?;
    }
    Ok(())
}

fn cmd_hopf(common: &CommonArgs, of: HopfTarget, sign: f64, continuity: bool) -> Result<()> {
    if common.format != Format::Csv {
        return Err(Error::Domain("hopf emits CSV tables only".into()));
    }
    let tols = build_tolerances(&common.tol)?;
    let source = resolve_source(common, &tols)?;
    let fc = source.sample(common.range.0, common.range.1, common.samples, &tols)?;
    let rows: Vec<(f64, crate::metric::HopfPoint)> = match of {
        HopfTarget::Curve => fc
            .s
            .iter()
            .enumerate()
            .map(|(i, &s)| Ok((s, hopf_project(fc.gamma(i), tols.hopf)?)))
            .collect::<Result<_>>()?,
        HopfTarget::Evolute => {
            let adapted = adapted_frame(&fc, &tols)?;
            let output = evolute(&fc, &adapted, &EvoluteOptions { sign, continuity }, &tols)?;
            output
                .samples
                .iter()
                .map(|sm| Ok((sm.s, hopf_project(sm.point, tols.hopf)?)))
                .collect::<Result<_>>()?
        }
    };
    let csv = export::hopf_csv(&rows);
    emit(&common.out, &csv)?;
    if let Some(path) = &common.out {
        let csv_name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "hopf.csv".into());
        let title = match of {
            HopfTarget::Curve => "curve",
            HopfTarget::Evolute => "evolute",
        };
        std::fs::write(aux_path(path, ".gp"), export::hopf_gnuplot(&csv_name, title))?;
    }
    Ok(())
}

fn cmd_catalog() -> Result<()> {
    for entry in catalog() {
        println!("{:<20} {:<10} {}", entry.name, entry.kind.to_string(), entry.summary);
    }
    Ok(())
}

/// Runs the parsed command; the binary maps errors to exit codes.
pub fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Analyze { common } => cmd_analyze(common),
        Command::Evolute {
            common,
            sign,
            continuity,
        } => cmd_evolute(common, *sign, *continuity),
        Command::Focal {
            common,
            case,
            theta_range,
            grid,
            proj,
        } => cmd_focal(common, *case, *theta_range, *grid, *proj),
        Command::Reconstruct {
            common,
            init,
            renormalize,
        } => cmd_reconstruct(common, init, *renormalize),
        Command::Hopf {
            common,
            of,
            sign,
            continuity,
        } => cmd_hopf(common, *of, *sign, *continuity),
        Command::Catalog => cmd_catalog(),
    }
}
