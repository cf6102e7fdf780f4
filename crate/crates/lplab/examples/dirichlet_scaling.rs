//! Kernel norm growth `||sum_{k=1}^N e^{ikx}||_p ~ c N^{1/q}`.
//!
//! ```bash
//! cargo run --example dirichlet_scaling
//! ```

use lplab::probe::dirichlet_scaling;

fn main() -> lplab::Result<()> {
    let ns: Vec<usize> = (4..=12).map(|k| 1usize << k).collect();
    println!("{:>8} {:>10} {:>10} {:>10}", "p", "fitted", "1/q", "r2");
    for p in [4.0 / 3.0, 1.5, 2.0, 3.0, 4.0] {
        let s = dirichlet_scaling(p, &ns)?;
        println!("{p:>8.4} {:>10.5} {:>10.5} {:>10.6}", s.fit.exponent, s.target_exponent, s.fit.r2);
    }

    let s = dirichlet_scaling(4.0 / 3.0, &ns)?;
    println!("\nnorm table at p = 4/3:");
    for (n, v) in ns.iter().zip(&s.norms) {
        println!("  N = {n:5}: {v:.6}");
    }
    Ok(())
}
