//! Crate-wide error type with the process exit-code mapping used by the CLI.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point is not on AdS^3: <u,u> = {value} (tolerance {tol})")]
    NotOnAds { value: f64, tol: f64 },

    #[error("framed condition violated at s = {s}: {what} residual {residual:.3e}")]
    FramedConditionViolated {
        s: f64,
        what: &'static str,
        residual: f64,
    },

    #[error("{0}")]
    Domain(String),

    #[error("derivative stencil leaves the domain at s = {s}")]
    StencilOutOfDomain { s: f64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("sample grid is not uniform at row {row}")]
    GridNotUniform { row: usize },

    #[error("pseudo-sphere membership violated at row {row}: {what}")]
    MembershipViolated { row: usize, what: String },

    #[error("curve is not regular at s = {s}")]
    NotRegular { s: f64 },

    #[error("tangent causal character changes sign at s = {s}")]
    MixedCausality { s: f64 },

    #[error("adapted frame degenerate at s = {s} ({what})")]
    AdaptedFrameDegenerate { s: f64, what: &'static str },

    #[error("initial frame is not pseudo-orthonormal (orth {orth:.3e}, |det|-1 = {det:.3e})")]
    InitNotOrthonormal { orth: f64, det: f64 },

    #[error("initial point is {dist:.3e} away from the first frame row")]
    InitPointMismatch { dist: f64 },

    #[error("orthonormality drift {residual:.3e} exceeds budget at s = {s}")]
    ToleranceExceeded { s: f64, residual: f64 },

    #[error("curves have different grids or kinds")]
    GridMismatch,

    #[error("evolute discriminant vanishes over the whole grid (first at s = {s})")]
    DiscriminantVanishes { s: f64 },

    #[error("well-definedness guard violated at s = {s}: {which}")]
    GuardViolated { s: f64, which: String },

    #[error("operation requires the AdS branch but a PS-branch sample is present at s = {s}")]
    BranchMismatch { s: f64 },

    #[error("omega is within tolerance of +-1 at s = {s}; compact curvature form is singular")]
    OmegaSingular { s: f64 },

    #[error("focal case precondition violated at s = {s}: {what}")]
    CasePreconditionViolated { s: f64, what: String },

    #[error("both signed-density coefficients vanish at s = {s}")]
    DegenerateDensity { s: f64 },

    #[error("height-function argument lies on the wrong pseudo-sphere: <v,v> = {value}, expected {expected}")]
    SphereMismatch { expected: f64, value: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// CLI exit code: 2 input validation, 3 mathematical degeneracy, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            Io(_) => 4,
            NotOnAds { .. }
            | AdaptedFrameDegenerate { .. }
            | ToleranceExceeded { .. }
            | DiscriminantVanishes { .. }
            | GuardViolated { .. }
            | BranchMismatch { .. }
            | OmegaSingular { .. }
            | CasePreconditionViolated { .. }
            | DegenerateDensity { .. }
            | NotRegular { .. }
            | MixedCausality { .. } => 3,
            _ => 2,
        }
    }
}
