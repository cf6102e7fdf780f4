//! Small-translation search: move a finite set off a nowhere dense set.
//!
//! The feasible shifts form the complement of finitely many translated
//! components inside (-delta, delta); the search returns the midpoint of a
//! feasible interval closest to zero, or an exact infeasibility witness.
//!
//! ```bash
//! cargo run --example shift_search
//! ```

use lplab::combinatorics::{chain_split_shift, clearance_shift};
use lplab::set::{cantor_triadic, Chain, GapSet};

fn main() -> lplab::Result<()> {
    let cantor = cantor_triadic(1)?;

    // 1/3 is an endpoint of the middle gap: blocked shifts are [-0.1, 0],
    // so the smallest feasible midpoint is 0.05
    let xi = clearance_shift(&[1.0 / 3.0], &cantor, 0.1)?;
    println!("shift for {{1/3}} off cantor depth 1 (delta 0.1): xi = {xi}");
    println!("  1/3 + xi = {} lies in gap {:?}", 1.0 / 3.0 + xi, cantor.gaps()[0]);

    // already clear of the set: zero shift
    println!("shift for {{0.5}}: xi = {}", clearance_shift(&[0.5], &cantor, 0.1)?);

    // a solid window blocks everything; the error carries the coverage
    let solid = GapSet::from_gaps((0.0, 1.0), vec![])?;
    match clearance_shift(&[0.5], &solid, 0.1) {
        Err(err) => println!("solid window: {err}"),
        Ok(_) => unreachable!(),
    }

    // chains: shift until the whole chain splits the set. Two points in the
    // single depth-1 gap can never land in distinct gaps, so the search
    // reports the blocking gap; depth 2 offers enough gaps.
    let chain = Chain::new(1.0 / 3.0, vec![1.0 / 9.0], 0.0)?;
    match chain_split_shift(&chain, &cantor, 0.05) {
        Err(err) => println!("\nchain {{1/3, 4/9}} vs depth 1: {err}"),
        Ok(_) => unreachable!(),
    }
    let deeper = cantor_triadic(2)?;
    let wide = Chain::new(0.2, vec![0.6], 0.0)?;
    let (xi, cert) = chain_split_shift(&wide, &deeper, 0.05)?;
    println!("chain {{0.2, 0.8}} vs depth 2: xi = {xi}, assignments {:?}", cert.assignments);
    Ok(())
}
