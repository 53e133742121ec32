//! Sample a focal surface, export it as an OBJ wavefront mesh, and extract
//! its singular locus with cuspidal-edge / swallowtail classification.
//!
//! ```bash
//! cargo run -p adscurve --example focal_surface_mesh
//! ```

use adscurve::export::{focal_obj, locus_csv, Projection};
use adscurve::{
    adapted_frame, focal_singular_locus, focal_surface, CurveSource, FocalCase, SingularClass,
    Tolerances,
};

fn main() -> adscurve::Result<()> {
    let tols = Tolerances::default();
    let fc = CurveSource::from_catalog("timelike-example")?.sample(-1.0, 1.0, 101, &tols)?;
    let adapted = adapted_frame(&fc, &tols)?;

    let grid = focal_surface(&fc, &adapted, FocalCase::F3, (-1.0, 1.0), 41, &tols)?;
    println!(
        "focal surface F3: {} x {} grid on {:?}",
        grid.s.len(),
        grid.theta.len(),
        grid.sphere
    );

    let locus = focal_singular_locus(&fc, &adapted, FocalCase::F3, &tols)?;
    let edges = locus
        .iter()
        .filter(|p| p.class == SingularClass::CuspidalEdge)
        .count();
    println!("singular locus: {} points, {edges} cuspidal edges", locus.len());
    println!(
        "  first point: s0 = {:+.3}, theta0 = {:?}, alpha_E = {:+.6}",
        locus[0].s0, locus[0].theta0, locus[0].alpha_e.unwrap()
    );

    let dir = std::env::temp_dir().join("adscurve-examples");
    std::fs::create_dir_all(&dir)?;
    let mesh_path = dir.join("focal_f3.obj");
    std::fs::write(&mesh_path, focal_obj(&grid, Projection::Hopf, tols.hopf)?)?;
    let locus_path = dir.join("focal_f3.locus.csv");
    std::fs::write(&locus_path, locus_csv(&locus))?;
    println!("\nwrote {}", mesh_path.display());
    println!("wrote {}", locus_path.display());
    Ok(())
}
