//! The chain growth law: R_n = (sqrt(2) / ||1+e^{it}||_p)^n.
//!
//! For p < 2 the factor exceeds one, so R_n runs away — no constant can
//! dominate the square-function ratio of a set containing chains of every
//! order. At p = 2 the table is flat.
//!
//! ```bash
//! cargo run --example chain_growth
//! ```

use lplab::probe::{chain_ratio, cube_norm_direct, factor_norm, chain_growth_table};

fn main() -> lplab::Result<()> {
    let closed = std::f64::consts::PI / (2.0 * std::f64::consts::SQRT_2);
    let r1 = chain_ratio(1, 1.0)?;
    println!("r at p=1: quadrature {:.9} vs closed form pi/(2 sqrt 2) = {closed:.9}", r1.r);

    // cross-check the factorization against direct multi-dimensional grids
    for (n, m) in [(2usize, 1024usize), (3, 128)] {
        let p = 4.0 / 3.0;
        let direct = cube_norm_direct(n, p, m)?;
        let factored = factor_norm(p)?.powi(n as i32);
        println!("n = {n}: direct {direct:.8} vs factored {factored:.8} (diff {:.2e})", (direct - factored).abs());
    }

    for p in [1.0, 4.0 / 3.0, 2.0] {
        let rep = chain_growth_table(&(1..=20).collect::<Vec<_>>(), p)?;
        let tail: Vec<String> = rep.series.iter().rev().take(3).rev().map(|&(n, v)| format!("R_{n:.0} = {v:.4}")).collect();
        println!("\np = {p:.4}: r = {:.6}; {}", rep.scalars["r"], tail.join(", "));
        for flag in &rep.flags {
            println!("  flag: {flag}");
        }
    }
    Ok(())
}
