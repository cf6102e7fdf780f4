//! A set thin in every metric sense whose chain structure still defeats the
//! square-function inequalities.
//!
//! The construction picks triadic exponents n_k with
//! `6 * 2^k <= psi(3^-n_k) / 3^-n_k`, stacks chains of every order from the
//! lengths 3^-n_k, and keeps the whole set under the majorant psi. Chains
//! whose internal spacing falls below f64 resolution collapse in the stored
//! point set; their certificates remain exact on the integer exponents.
//!
//! ```bash
//! cargo run --example thin_set_thin_chain
//! ```

use lplab::set::{thin_chain_set, PsiSpec};
use lplab::thickness::neighborhood_measure;

fn main() -> lplab::Result<()> {
    // psi(d) = sqrt(d): exponents grow linearly, every chain materializes
    let psi = PsiSpec::power(0.5)?;
    let t3 = thin_chain_set(&psi, 3)?;
    println!("psi(d) = sqrt(d), K = 3:");
    println!("  exponents n_k: {:?}", t3.exponents);
    println!("  points: {}, limit {:.9}", t3.points.len(), t3.limit);
    for chain in &t3.chains {
        println!(
            "  order {}: base {:.9}, length exponents {:?}, collapsed: {}",
            chain.order,
            chain.base,
            chain.length_exponents,
            chain.collapsed()
        );
    }

    // psi(d) = d (log 1/d)^2 forces n_k ~ 2^(k/2): deep chains drop below
    // machine resolution but the measure bound is what matters
    let psi = PsiSpec::power_log(2.0)?;
    let t3 = thin_chain_set(&psi, 4)?;
    println!("\npsi(d) = d (log 1/d)^2, K = 4:");
    println!("  first exponents: {:?} ...", &t3.exponents[..8]);
    println!("  collapsed chain orders: {:?}", t3.collapsed_orders());
    println!("  distinct stored points: {}", t3.points.len());
    println!("\n  {:>12} {:>14} {:>14}", "delta", "|(E)_delta|", "psi(delta)");
    for i in 0..=6 {
        let delta = 10f64.powf(-3.0 - i as f64);
        let measure = neighborhood_measure(&t3.set, delta)?;
        println!("  {delta:>12.1e} {measure:>14.6e} {:>14.6e}", psi.eval(delta));
    }
    Ok(())
}
