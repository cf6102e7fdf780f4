//! Build each set family and inspect the gap-set representation.
//!
//! ```bash
//! cargo run --example construct_sets
//! ```

use lplab::set::{cantor_triadic, dyadic_set, generated_set, sum_set, GapSequence};

fn describe(name: &str, set: &lplab::set::GapSet) {
    let (x0, x1) = set.window();
    println!(
        "{name:22} window [{x0:.4}, {x1:.4}]  gaps {:5}  components {:5}  residual {:.6e}",
        set.gaps().len(),
        set.components().len(),
        set.residual()
    );
}

fn main() -> lplab::Result<()> {
    // the classical lacunary example: {0} U {+-2^k}
    let dyadic = dyadic_set(-4, 4)?;
    describe("dyadic(-4, 4)", &dyadic);
    let points: Vec<f64> = dyadic.components().iter().map(|c| c.0).collect();
    println!("  points: {points:?}");

    // middle thirds, truncated
    for depth in [1, 4, 8] {
        describe(&format!("cantor depth {depth}"), &cantor_triadic(depth)?);
    }

    // subset sums of rapidly decaying generators (uncountable in the limit)
    let sums = sum_set(&[1.0, 1.0 / 3.0, 1.0 / 9.0])?;
    describe("sum_set 3^-k, K=3", &sums);
    let pts: Vec<f64> = sums.components().iter().map(|c| c.0).collect();
    println!("  subset sums: {pts:?}");

    // a perfect-set truncation generated by delta_k = 2^-k; the root gap is
    // placed after the truncated left-subtree mass
    let seq = GapSequence::geometric_normalized(std::f64::consts::LN_2)?;
    println!(
        "geometric 2^-k: {} terms, sum {:.12}, strictly decreasing: {}",
        seq.len(),
        seq.sum(),
        seq.is_strictly_decreasing()
    );
    let gen1 = generated_set(&seq, 1)?;
    describe("generated depth 1", &gen1);
    println!("  root gap at {:?}", gen1.gaps()[0]);
    describe("generated depth 10", &generated_set(&seq, 10)?);

    Ok(())
}
