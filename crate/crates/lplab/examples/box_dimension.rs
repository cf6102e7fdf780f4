//! Box-counting dimension estimates across the families.
//!
//! The middle-thirds set at triadic scales is counted exactly (2^n cells at
//! scale 3^-n), so the fitted slope lands on ln2/ln3 to many digits.
//!
//! ```bash
//! cargo run --example box_dimension
//! ```

use lplab::set::{cantor_triadic, dyadic_set, GapSet};
use lplab::thickness::box_counting;

fn main() -> lplab::Result<()> {
    let scales: Vec<f64> = (1..=8).map(|n| 3f64.powi(-n)).collect();

    let cantor = cantor_triadic(10)?;
    let fit = box_counting(&cantor, &scales)?;
    println!("cantor depth 10:");
    for (s, c) in fit.scales.iter().zip(&fit.counts) {
        println!("  N({s:.8}) = {c}");
    }
    println!("  slope {:.6}  (ln2/ln3 = {:.6})  r2 = {:.9}", fit.slope, 2f64.ln() / 3f64.ln(), fit.r2);

    let full = GapSet::from_gaps((0.0, 1.0), vec![])?;
    println!("\nfull interval slope: {:.6}", box_counting(&full, &scales)?.slope);

    let point = GapSet::singleton(0.4);
    println!("single point slope: {:.6}", box_counting(&point, &scales)?.slope);

    // a point set with geometric accumulation at 0: dimension estimate well
    // below 1 but above 0 at these scales
    let dyadic = dyadic_set(-12, 0)?;
    let dy_scales: Vec<f64> = (3..=9).map(|n| 2f64.powi(-n)).collect();
    let fit = box_counting(&dyadic, &dy_scales)?;
    println!("dyadic(-12, 0) slope over 2^-3..2^-9: {:.4}", fit.slope);

    // scales below the truncation are excluded, not silently fitted
    let shallow = cantor_triadic(4)?;
    let mixed = vec![1.0 / 3.0, 1.0 / 9.0, 1.0 / 27.0, 1.0 / 81.0, 1e-4, 1e-5];
    let fit = box_counting(&shallow, &mixed)?;
    println!(
        "\ncantor depth 4 with sub-truncation scales: {} used, {} excluded, slope {:.4}",
        fit.scales.len(),
        fit.unreliable_scales.len(),
        fit.slope
    );
    Ok(())
}
