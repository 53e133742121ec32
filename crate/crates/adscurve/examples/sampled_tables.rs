//! Work with user-supplied sample tables: save a curve to the CSV schema,
//! reload it, and compare finite-difference derivatives against the
//! analytic ones.
//!
//! ```bash
//! cargo run -p adscurve --example sampled_tables
//! ```

use adscurve::{
    differentiate, differentiate_fd, load_sampled_csv, save_sampled_csv, CurveField, CurveSource,
    DiffConfig, Tolerances,
};

fn main() -> adscurve::Result<()> {
    let tols = Tolerances::default();
    let dir = std::env::temp_dir().join("adscurve-examples");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("timelike.csv");

    let analytic = CurveSource::from_catalog("timelike-example")?;
    let fc = analytic.sample(-1.0, 1.0, 401, &tols)?;
    save_sampled_csv(&fc, &path)?;
    println!("wrote {} ({} rows)", path.display(), fc.len());

    let table = load_sampled_csv(&path, &tols)?;
    let fc2 = table.sample(-1.0, 1.0, 401, &tols)?;
    println!("reloaded table validates: {} samples, kind {}", fc2.len(), fc2.kind);

    // table derivatives come from finite-difference stencils on the grid;
    // compare them against the closed-form jets of the analytic source
    let cfg = DiffConfig::default();
    for order in 1..=3 {
        let mut worst = 0.0f64;
        for &s in &[-0.9, -0.5, 0.0, 0.5, 0.9] {
            let fd = differentiate(&table, CurveField::Gamma, order, s, &cfg)?;
            let exact = differentiate(&analytic, CurveField::Gamma, order, s, &cfg)?;
            worst = worst.max((fd - exact).flat_norm());
        }
        println!("gamma derivative order {order}: max FD-vs-analytic error {worst:.2e}");
    }

    // at the boundary there is no room for a centered stencil
    let at_edge = differentiate(&table, CurveField::Gamma, 1, -1.0, &cfg);
    println!("derivative at the boundary node: {at_edge:?}");

    // the sampling-based cross-check on the analytic source itself
    let fd = differentiate_fd(&analytic, CurveField::Mu, 1, 0.3, &cfg)?;
    let exact = differentiate(&analytic, CurveField::Mu, 1, 0.3, &cfg)?;
    println!(
        "gradient-vs-finite-difference check on mu': {:.2e}",
        (fd - exact).flat_norm()
    );
    Ok(())
}
