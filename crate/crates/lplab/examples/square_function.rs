//! The masked-DFT square function and the empirical frame range.
//!
//! Frequencies are partitioned by the scaled complementary gaps; each band is
//! inverted separately and aggregated pointwise in l2. At p = 2 the frame
//! constants collapse to 1 for every partition; away from 2 the spread
//! depends on the set's structure.
//!
//! ```bash
//! cargo run --example square_function
//! ```

use lplab::probe::{admissible_bins, frame_probe, square_function, FrameProbeConfig, TrigPolynomial};
use lplab::set::{cantor_triadic, dyadic_set};
use rustfft::num_complex::Complex64;

fn main() -> lplab::Result<()> {
    let one = Complex64::new(1.0, 0.0);
    let dyadic = dyadic_set(0, 4)?;

    // two unimodular characters in distinct dyadic bands: S(f) is the
    // constant sqrt(2)
    let f = TrigPolynomial::new(vec![(3, one), (5, one)])?.evaluate(64)?;
    let s = square_function(&f, &dyadic, 1.0)?;
    println!("f = e^(3ix) + e^(5ix), dyadic bands: S(f)(x0) = {:.12}", s.samples()[0].re);
    println!("  ||f||_2 = {:.12}, ||S(f)||_2 = {:.12}", f.lp_norm(2.0)?, s.lp_norm(2.0)?);

    // a loud coefficient on the set itself is refused
    let bad = TrigPolynomial::new(vec![(16, one)])?.evaluate(128)?;
    match square_function(&bad, &dyadic, 1.0) {
        Err(err) => println!("coefficient on the set: {err}"),
        Ok(_) => unreachable!(),
    }

    // frame ranges: p = 2 pins both constants at 1; p = 4/3 opens a spread
    let cantor = cantor_triadic(6)?;
    println!("\ncantor depth 6, {} admissible bins at grid 2048", admissible_bins(&cantor, 512.0, 2048)?.len());
    for p in [2.0, 4.0 / 3.0] {
        let cfg = FrameProbeConfig::with_default_scale(p, 60, 2048, 42, &cantor);
        let probe = frame_probe(&cantor, &cfg)?;
        println!(
            "  p = {p:.4}: c1_hat = {:.6}, c2_hat = {:.6}, spread {:.4}",
            probe.c1_hat,
            probe.c2_hat,
            probe.c2_hat / probe.c1_hat
        );
    }
    Ok(())
}
