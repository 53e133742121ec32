//! Project curves and evolutes to the hyperbolic 2-space with the Hopf map
//! and emit plot-ready CSV tables plus gnuplot scripts.
//!
//! ```bash
//! cargo run -p adscurve --example hopf_projection
//! gnuplot /tmp/adscurve-examples/spacelike_curve.csv.gp   # if gnuplot is around
//! ```

use adscurve::export::{hopf_csv, hopf_gnuplot};
use adscurve::{
    adapted_frame, evolute, hopf_project, CurveSource, EvoluteOptions, HopfPoint, Tolerances,
};

fn main() -> adscurve::Result<()> {
    let tols = Tolerances::default();
    let dir = std::env::temp_dir().join("adscurve-examples");
    std::fs::create_dir_all(&dir)?;

    // the singular spacelike curve itself
    let fc = CurveSource::from_catalog("spacelike-example")?.sample(-1.0, 1.0, 201, &tols)?;
    let rows: Vec<(f64, HopfPoint)> = (0..fc.len())
        .map(|i| Ok((fc.s[i], hopf_project(fc.gamma(i), tols.hopf)?)))
        .collect::<adscurve::Result<_>>()?;
    let name = "spacelike_curve.csv";
    std::fs::write(dir.join(name), hopf_csv(&rows))?;
    std::fs::write(
        dir.join(format!("{name}.gp")),
        hopf_gnuplot(name, "spacelike curve"),
    )?;
    println!("wrote {} (+ .gp script)", dir.join(name).display());

    // its AdS-evolute, on the range where the discriminant stays negative
    let fc = CurveSource::from_catalog("spacelike-example")?.sample(-0.4, 0.4, 201, &tols)?;
    let adapted = adapted_frame(&fc, &tols)?;
    let out = evolute(&fc, &adapted, &EvoluteOptions::default(), &tols)?;
    let rows: Vec<(f64, HopfPoint)> = out
        .samples
        .iter()
        .map(|sm| Ok((sm.s, hopf_project(sm.point, tols.hopf)?)))
        .collect::<adscurve::Result<_>>()?;
    let name = "spacelike_evolute.csv";
    std::fs::write(dir.join(name), hopf_csv(&rows))?;
    std::fs::write(
        dir.join(format!("{name}.gp")),
        hopf_gnuplot(name, "AdS-evolute"),
    )?;
    println!("wrote {} (+ .gp script)", dir.join(name).display());

    // every exported point satisfies the quadric of H^2(1/2)
    let worst = rows
        .iter()
        .map(|(_, h)| h.quadric_residual())
        .fold(0.0, f64::max);
    println!("max quadric residual over the evolute table: {worst:.2e}");
    Ok(())
}
