//! n-chain detection and the staircase sequence holding a chain of every order.
//!
//! ```bash
//! cargo run --example chains
//! ```

use lplab::combinatorics::{find_chain, chain_staircase, ChainSearch, ChainSearchMode, POINT_TOLERANCE};
use lplab::set::Chain;

fn main() -> lplab::Result<()> {
    // {0,1,2,3} is the order-2 chain with lengths {1, 2}
    match find_chain(&[0.0, 1.0, 2.0, 3.0], 2, ChainSearchMode::Exact, POINT_TOLERANCE)? {
        ChainSearch::Found(c) => println!("{{0,1,2,3}}: base {}, lengths {:?}", c.base(), c.lengths()),
        other => println!("unexpected: {other:?}"),
    }
    // three points cannot hold four subset sums
    println!("{{0,1,2}}, n=2: {:?}", find_chain(&[0.0, 1.0, 2.0], 2, ChainSearchMode::Exact, POINT_TOLERANCE)?);

    // a planted chain among noise, found heuristically (order 4 exceeds the
    // exact-mode cap)
    let planted = Chain::new(10.0, vec![1.0, 3.0, 9.0, 27.0], 0.0)?;
    let mut points = planted.points();
    points.extend([0.25, 55.5, 103.0]);
    match find_chain(&points, 4, ChainSearchMode::Heuristic, POINT_TOLERANCE)? {
        ChainSearch::Found(c) => println!("planted order-4 chain recovered: base {}, lengths {:?}", c.base(), c.lengths()),
        other => println!("heuristic missed: {other:?}"),
    }

    // the staircase of chains: F_n lives in [alpha_n, beta_n], pairwise
    // disjoint, one chain of every order
    let lengths: Vec<f64> = (1..=20).map(|k| 3f64.powi(-k)).collect();
    let stairs = chain_staircase(&lengths, 3)?;
    println!("\nstaircase with l_k = 3^-k up to order 3 ({} points):", stairs.points.len());
    for (chain, interval) in stairs.chains.iter().zip(&stairs.intervals) {
        println!(
            "  F_{}: [{:.8}, {:.8}], 2^{} points, first {:.8}",
            chain.order(),
            interval.0,
            interval.1,
            chain.order(),
            chain.points()[0]
        );
    }
    Ok(())
}
