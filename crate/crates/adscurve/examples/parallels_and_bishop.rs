//! Rotate the transverse frame (Bishop-type frame), build anti-de Sitter
//! parallels, and observe that parallels share their evolute with the
//! original curve.
//!
//! ```bash
//! cargo run -p adscurve --example parallels_and_bishop
//! ```

use adscurve::{
    adapted_frame, bishop_frame, evolute, framed_curvature, parallel_curve, CurveSource,
    EvoluteOptions, ParallelParams, Tolerances,
};

fn main() -> adscurve::Result<()> {
    let tols = Tolerances::default();
    let fc = CurveSource::from_catalog("timelike-example")?.sample(0.0, 1.0, 101, &tols)?;

    // the Bishop-type rotation kills the ell-coefficient; here ell = 1 so
    // the angle is just theta(s) = s
    let bishop = bishop_frame(&fc, 0.0);
    println!("bishop angle theta(1) = {:.6} (ell = 1 gives theta = s)", bishop.theta[100]);
    println!(
        "rotated curvature pair at s = 1: (mbar, nbar) = ({:+.6}, {:+.6})",
        bishop.mbar[100], bishop.nbar[100]
    );

    // parallels are again framed curves with vanishing ell
    for phi in [0.3, 1.0] {
        let pp = ParallelParams { phi, ..Default::default() };
        let par = parallel_curve(&fc, &pp, &tols)?;
        let cq = framed_curvature(&par);
        println!(
            "\nparallel phi = {phi}: alpha(0) = {:+.6}, ell stays at {:.1e}",
            cq.alpha[0],
            cq.ell.iter().map(|x| x.abs()).fold(0.0, f64::max)
        );

        // same evolute as the base curve
        let base = evolute(&fc, &adapted_frame(&fc, &tols)?, &EvoluteOptions::default(), &tols)?;
        let pout = evolute(&par, &adapted_frame(&par, &tols)?, &EvoluteOptions::default(), &tols)?;
        let worst = base
            .samples
            .iter()
            .zip(&pout.samples)
            .map(|(a, b)| {
                (a.point - b.point)
                    .flat_norm()
                    .min((a.point + b.point).flat_norm())
            })
            .fold(0.0, f64::max);
        println!("  evolute deviation from the base curve's evolute: {worst:.2e}");
    }
    Ok(())
}
