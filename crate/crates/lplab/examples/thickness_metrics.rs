//! Delta-neighbourhood measures, portions and the porosity scan.
//!
//! ```bash
//! cargo run --example thickness_metrics
//! ```

use lplab::set::{cantor_triadic, GapSet};
use lplab::thickness::{neighborhood_measure, porosity_estimate, portion_neighborhood};

fn main() -> lplab::Result<()> {
    let cantor = cantor_triadic(8)?;
    println!("cantor depth 8: reliability floor {:.4e}", cantor.reliable_floor());
    println!("{:>12} {:>14} {:>10}", "delta", "|(E)_delta|", "reliable");
    for j in 1..=10 {
        let delta = 2f64.powi(-j);
        let measure = neighborhood_measure(&cantor, delta)?;
        println!("{delta:>12.6} {measure:>14.8} {:>10}", delta >= cantor.reliable_floor());
    }

    // portions: the left-third piece carries half the neighbourhood
    let whole = neighborhood_measure(&cantor, 0.01)?;
    let left = portion_neighborhood(&cantor, (0.0, 1.0 / 3.0), 0.01)?;
    println!("\nportion [0,1/3] at delta 0.01: {:.6} of whole {:.6}", left.measure, whole);

    // porosity: smallest observed (largest gap in I)/|I| with its witness
    let est = porosity_estimate(&cantor, 10)?;
    println!("\nporosity estimate c_hat = {:.6}", est.c_hat);
    println!("  witness interval [{:.6}, {:.6}], largest inner gap {:.6}", est.witness.0, est.witness.1, est.witness_gap);

    // two isolated points are as porous as it gets
    let two = GapSet::from_points(&[0.0, 1.0])?;
    println!("two-point set c_hat = {:.3}", porosity_estimate(&two, 8)?.c_hat);

    Ok(())
}
