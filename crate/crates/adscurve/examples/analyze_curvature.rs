//! Extract the curvature quadruple of catalog curves and locate singular
//! parameters.
//!
//! ```bash
//! cargo run -p adscurve --example analyze_curvature
//! ```

use adscurve::{framed_curvature, singular_parameters, CurveSource, Tolerances};

fn main() -> adscurve::Result<()> {
    let tols = Tolerances::default();

    for name in ["timelike-example", "spacelike-example", "circle-trivial"] {
        let fc = CurveSource::from_catalog(name)?.sample(-1.0, 1.0, 201, &tols)?;
        let cq = framed_curvature(&fc);
        let singular = singular_parameters(&cq, &tols);

        println!("{name} ({} kind, eps = {})", fc.kind, cq.eps);
        for &i in &[0usize, 100, 200] {
            println!(
                "  s = {:+.2}   (alpha, ell, m, n) = ({:+.6}, {:+.6}, {:+.6}, {:+.6})",
                cq.s[i], cq.alpha[i], cq.ell[i], cq.m[i], cq.n[i]
            );
        }
        if singular.is_empty() {
            println!("  no singular parameters (the curve is an immersion)");
        } else {
            println!("  singular parameters: {singular:?}");
        }
        println!();
    }
    Ok(())
}
