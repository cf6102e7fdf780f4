//! Random-sign experiments: the sign-averaged norm of a character sum on a
//! splitting subset, and the Khintchine ratio that floors it.
//!
//! ```bash
//! cargo run --example rademacher_khintchine
//! ```

use lplab::combinatorics::{max_splitting_subset, APSpec};
use lplab::probe::{khintchine_ratio, rademacher_experiment, RademacherConfig, SignMode};
use lplab::set::dyadic_set;

fn main() -> lplab::Result<()> {
    // Khintchine: flat coefficient vectors, exhaustive sign averages
    println!("khintchine ratio for ones(n), p = 1:");
    for n in [1usize, 2, 4, 10, 12] {
        let r = khintchine_ratio(&vec![1.0; n], 1.0, SignMode::Exhaustive, 0, 0)?;
        println!("  n = {n:2}: {r:.9}");
    }
    let mc = khintchine_ratio(&[1.0; 24], 1.0, SignMode::MonteCarlo, 50_000, 7)?;
    println!("  n = 24 (monte carlo, 50k trials, seed 7): {mc:.6}");

    // frequencies from a maximal splitting subset of an integer progression;
    // nu ~ log2 N keeps sqrt(nu) far below N^{1/q}
    let set = dyadic_set(0, 12)?;
    let n = 256usize;
    let ap = APSpec::new(0.0, 1.0, n)?;
    let (nu, subset) = max_splitting_subset(&set, &ap);
    let k_list: Vec<i64> = subset.iter().map(|&x| x as i64).collect();
    println!("\nsplitting subset of 1..{n} against dyadic(0,12): nu = {nu}, freqs {k_list:?}");

    let cfg = RademacherConfig {
        ambient_n: n,
        p: 4.0 / 3.0,
        mode: SignMode::Exhaustive,
        trials: 0,
        seed: 0,
        grid: 2048,
    };
    let rep = rademacher_experiment(&k_list, &cfg)?;
    for key in ["theta_mean_norm", "dirichlet_rhs", "ratio_vs_rhs", "khintchine_floor", "diagnostic_sqrt_nu_over_N1q"] {
        println!("  {key:28} {:.6}", rep.scalars[key]);
    }
    println!("  sqrt(nu) = {:.4} vs 2 N^(1/4) = {:.4}", (nu as f64).sqrt(), 2.0 * (n as f64).powf(0.25));
    Ok(())
}
