//! Moving frames, evolutes, and focal surfaces of framed curves in the
//! anti-de Sitter 3-space.
//!
//! The crate works in the semi-Euclidean 4-space of index 2 and treats curves
//! on the quadric `<u,u> = -1` that may have singular points. Frames that
//! remain defined through singularities drive everything downstream:
//! curvature extraction, curve reconstruction from curvature data, evolutes
//! with their branch structure, focal surfaces with cuspidal-edge and
//! swallowtail detection, and height-function discriminants. The hyperbolic
//! Hopf map provides plot-ready projections.
//!
//! Start with the `examples/` directory (one runnable example per
//! capability) or the `adscurve` command-line binary.

pub mod cli;
pub mod config;
pub mod curve;
pub mod error;
pub mod evolute;
pub mod export;
pub mod focal;
pub mod framing;
pub mod height;
pub mod jet;
pub mod metric;
pub mod reconstruction;

pub use config::Tolerances;
pub use curve::{
    catalog, catalog_lookup, differentiate, differentiate_fd, load_sampled_csv, save_sampled_csv,
    CatalogEntry, CurveField, CurveKind, CurveSource, DiffConfig, FdOrder, FramedCurve,
    SampledTable,
};
pub use error::{Error, Result};
pub use evolute::{
    alpha_evolute_compact, evolute, evolute_frame, EvoluteBranch, EvoluteFrame, EvoluteOptions,
    EvoluteOutput, EvoluteSample,
};
pub use focal::{
    classify, focal_point, focal_singular_locus, focal_surface, FocalCase, FocalGrid,
    SingularClass, SingularLocusPoint,
};
pub use framing::{
    adapted_frame, bishop_frame, framed_curvature, parallel_curve, regular_frenet,
    singular_parameters, AdaptedFrameData, BishopData, CurvatureQuad, HyperbolicPair,
    ParallelParams, RegularFrenetData, ThetaSign,
};
pub use height::{discriminant_scan, height_check, DiscriminantSets, HeightCheck, HeightKind};
pub use jet::Jet;
pub use metric::{
    causal_class, frame_residuals, hopf_project, inner, sphere_membership, triple_product,
    CausalClass, FrameMatrix, HopfPoint, PseudoSphere, Vec4R22,
};
pub use reconstruction::{
    congruence_find, drift_report, reconstruct, CurvatureSpec, ReconstructionResult, ScalarField,
};
