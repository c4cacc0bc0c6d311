//! A miniature benchmark sweep with an exponent fit at the end.
//!
//! The real experiment grids go to 10^7 nodes; this one stays small enough
//! to finish in seconds.
//!
//! Run with: cargo run --release --example sweep

use lcl_trees::bench::{
    fit_exponent, run_experiment, ExperimentConfig, FamilySpec, XTransform,
};

fn main() {
    let config = ExperimentConfig {
        family: FamilySpec::Lb { exponents: vec![1.0 / 3.0], logstar: false },
        variant: "2.5".into(),
        k: 2,
        n_grid: vec![3_000, 10_000, 30_000, 100_000, 300_000],
        seeds: 2,
        id_factor: 3,
        validate: true,
    };
    let report = run_experiment(&config, None).unwrap();

    let points: Vec<(f64, f64)> =
        report.rows.iter().map(|r| (r.n as f64, r.avg_rounds())).collect();
    for (n, avg) in &points {
        println!("n = {n:>8}  avg rounds = {avg:.1}");
    }

    let fit = fit_exponent(&points, XTransform::N).unwrap();
    println!("fitted exponent {:.3} (r2 = {:.4})", fit.slope, fit.r2);
    // the family is built for node-averaged complexity Theta(n^{1/3})
    assert!((fit.slope - 1.0 / 3.0).abs() < 0.1);
}
