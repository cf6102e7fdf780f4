//! Splitting subsets of arithmetic progressions, with JSON certificates.
//!
//! A finite set splits a gap set when each point sits strictly inside its own
//! complementary gap. Against the dyadic set, a progression of length N can
//! split at most ~log2 N gaps — the growth that caps how thick a set with
//! square-function bounds can be.
//!
//! ```bash
//! cargo run --example splitting_certificates
//! ```

use lplab::combinatorics::{max_splitting_subset, splits, APSpec};
use lplab::set::{cantor_triadic, dyadic_set};

fn main() -> lplab::Result<()> {
    let set = dyadic_set(0, 12)?;
    println!("dyadic(0,12): nu vs 3 log2 N for integer progressions 1..N");
    println!("{:>6} {:>6} {:>10}", "m", "nu", "3 log2 N");
    for m in 4..=12 {
        let ap = APSpec::new(0.0, 1.0, 1 << m)?;
        let (nu, _) = max_splitting_subset(&set, &ap);
        println!("{m:>6} {nu:>6} {:>10}", 3 * m);
    }

    // a worked certificate
    let small = dyadic_set(0, 3)?;
    let ap = APSpec::new(0.5, 1.0, 8)?;
    let (nu, subset) = max_splitting_subset(&small, &ap);
    let cert = splits(&subset, &small);
    println!("\ndyadic(0,3) with AP 1.5..8.5: nu = {nu}, subset {subset:?}");
    println!("certificate: {}", serde_json::to_string_pretty(&cert.to_json()).unwrap());

    // failure witnesses: shared gap, and a point on the set
    let cantor = cantor_triadic(1)?;
    let bad = splits(&[0.4, 0.5], &cantor);
    println!("\n{{0.4, 0.5}} against cantor depth 1: valid = {}, failure = {:?}", bad.valid, bad.failure);
    let on_set = splits(&[0.25], &cantor);
    println!("{{0.25}} against cantor depth 1: valid = {}, failure = {:?}", on_set.valid, on_set.failure);
    Ok(())
}
