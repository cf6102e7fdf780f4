//! Thick sets on the good side: perfect sets generated by fast-decaying gap
//! sequences, their neighbourhood growth, and the gap-ratio condition that
//! certifies square-function behaviour.
//!
//! ```bash
//! cargo run --example thick_lp_sets
//! ```

use lplab::set::{generated_set, GapSequence};
use lplab::thickness::{gap_lower_bound, neighborhood_measure, portion_decay_fit};

fn main() -> lplab::Result<()> {
    // delta_k = 2^-k: |(E)_delta| grows like delta log(1/delta)
    let seq = GapSequence::geometric_normalized(std::f64::consts::LN_2)?;
    let set = generated_set(&seq, 12)?;
    println!("generated set, delta_k = 2^-k, depth 12 ({} gaps placed)", set.gaps().len());
    println!("{:>10} {:>12} {:>12} {:>8}", "delta", "measure", "2d card", "m/(d j)");
    for j in 4..=10 {
        let delta = 2f64.powi(-j);
        let measure = neighborhood_measure(&set, delta)?;
        let bound = gap_lower_bound(&seq, delta)?;
        println!("{delta:>10.6} {measure:>12.6} {bound:>12.6} {:>8.3}", measure / (delta * j as f64));
    }

    // gap-ratio data: successive ratios at 1/2 satisfy the fixed-ratio
    // condition for any tau >= 1/2; the stretched family pushes ratios to 0
    let tau = 0.5;
    println!("\ngeometric ratios: first {:.4}, tau = {tau} violated at {:?}", seq.ratios()[0], seq.hare_klemes_violation(tau + 1e-12));
    let stretched = GapSequence::stretched(1.0)?;
    let r = stretched.ratios();
    println!(
        "stretched eta = 1: {} terms, ratios {:.4} -> {:.2e} (vanishing, the all-p condition)",
        stretched.len(),
        r[0],
        r[r.len() - 1]
    );
    let sset = generated_set(&stretched, 12)?;
    println!("stretched generated set: {} gaps, residual {:.3e}", sset.gaps().len(), sset.residual());

    // portion decay exponent: fat sets sit near exponent 1
    let grid: Vec<f64> = (4..=10).map(|j| 2f64.powi(-j)).collect();
    let rep = portion_decay_fit(&set, (0.0, 1.0), &grid, Some(4.0 / 3.0), 0.05)?;
    println!("\nportion-decay fit on the dyadic-rate set: exponent {:.4} (r2 {:.6})", rep.fit.exponent, rep.fit.r2);
    if let Some(check) = rep.bound_check {
        println!("  bound exponent 1 - 2/q at p = {}: {:.4}, passed: {}", check.p, check.bound_exponent, check.passed);
    }
    Ok(())
}
