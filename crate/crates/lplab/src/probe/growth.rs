//! The chain norm-ratio law: products of `1 + e^{it}` over independent
//! coordinates make the L2/Lp ratio grow geometrically, which is what rules
//! out a uniform square-function constant for sets with deep chains.

use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ProbeReport;
use crate::error::{Error, Result};

/// Quadrature grid for the one-dimensional factor norm. The integrand's kink
/// at `t = pi` sits on a node, so the trapezoid error is ~1e-10 here.
const FACTOR_GRID: usize = 1 << 16;

/// `||1 + e^{it}||_p` on the circle with normalized measure.
pub fn factor_norm(p: f64) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::param("p", format!("{p} must lie in [1, infinity)")));
    }
    if p == 2.0 {
        return Ok(std::f64::consts::SQRT_2);
    }
    let m = FACTOR_GRID;
    let mut sum = 0.0;
    for j in 0..m {
        let t = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
        // |1 + e^{it}| = 2 |cos(t/2)|
        let v = 2.0 * (t / 2.0).cos().abs();
        sum += v.powf(p);
    }
    Ok((sum / m as f64).powf(1.0 / p))
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ChainRatio {
    /// `r_p = ||1+e^{it}||_2 / ||1+e^{it}||_p`.
    pub r: f64,
    /// `R_n = r_p^n`, the order-n ratio from the product factorization.
    pub r_n: f64,
    pub n: usize,
    pub p: f64,
}

/// The L2-to-Lp norm ratio of the order-n cube polynomial
/// `sum_{eps in {0,1}^n} e^{i(eps, t)}`, via the factorization into
/// one-dimensional norms.
pub fn chain_ratio(n: usize, p: f64) -> Result<ChainRatio> {
    if n == 0 {
        return Err(Error::param("n", "chain order must be at least 1"));
    }
    let r = std::f64::consts::SQRT_2 / factor_norm(p)?;
    Ok(ChainRatio { r, r_n: r.powi(n as i32), n, p })
}

/// Direct n-dimensional quadrature of `||sum_{eps} e^{i(eps,t)}||_p` on an
/// `m^n` grid, summing the `2^n` exponentials pointwise. Supports `n <= 3`;
/// this is the independent cross-check for the factorized route.
pub fn cube_norm_direct(n: usize, p: f64, m: usize) -> Result<f64> {
    if n == 0 || n > 3 {
        return Err(Error::param("n", "direct cube quadrature supports n in 1..=3"));
    }
    if !(p >= 1.0) {
        return Err(Error::param("p", format!("{p} must lie in [1, infinity)")));
    }
    if m < 8 {
        return Err(Error::param("m", "grid too coarse"));
    }
    let row: Vec<Complex64> = (0..m)
        .map(|j| {
            let t = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
            Complex64::new(t.cos(), t.sin())
        })
        .collect();
    let one = Complex64::new(1.0, 0.0);
    let mut sum = 0.0f64;
    match n {
        1 => {
            for &w in &row {
                sum += (one + w).norm().powf(p);
            }
            sum /= m as f64;
        }
        2 => {
            for &w1 in &row {
                for &w2 in &row {
                    let s = one + w1 + w2 + w1 * w2;
                    sum += s.norm().powf(p);
                }
            }
            sum /= (m * m) as f64;
        }
        _ => {
            for &w1 in &row {
                // partial subset sums over (eps1, eps2)
                let pairs = [one, w1];
                for &w2 in &row {
                    let quad = [pairs[0], pairs[1], pairs[0] * w2, pairs[1] * w2];
                    let base: Complex64 = quad.iter().sum();
                    for &w3 in &row {
                        let s = base + quad.iter().map(|&q| q * w3).sum::<Complex64>();
                        sum += s.norm().powf(p);
                    }
                }
            }
            sum /= (m * m * m) as f64;
        }
    }
    Ok(sum.powf(1.0 / p))
}

/// Tabulates `R_n = r_p^n` over the requested orders. For `p < 2` the ratio
/// exceeds one, so the table grows without bound — the flag records that no
/// uniform constant can dominate it.
pub fn chain_growth_table(n_list: &[usize], p: f64) -> Result<ProbeReport> {
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::param("p", format!("{p} must lie in [1, 2]")));
    }
    if n_list.is_empty() {
        return Err(Error::param("n_list", "need at least one order"));
    }
    let r = std::f64::consts::SQRT_2 / factor_norm(p)?;
    let mut report = ProbeReport::new("chain_growth_table");
    report.params.insert("p".into(), serde_json::json!(p));
    report.scalars.insert("r".into(), r);
    let mut unbounded = false;
    for &n in n_list {
        let rn = r.powi(n as i32);
        report.series.push((n as f64, rn));
        if rn > 1.0 + 1e-9 {
            unbounded = true;
        }
    }
    if unbounded {
        report.flags.push("no uniform constant: R_n exceeds every bound as n grows".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn p2_ratio_is_flat_one() {
        let cr = chain_ratio(5, 2.0).unwrap();
        assert_abs_diff_eq!(cr.r, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cr.r_n, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn p1_ratio_closed_form() {
        // ||1+e^{it}||_1 = 4/pi, so r_1 = pi / (2 sqrt(2))
        let cr = chain_ratio(1, 1.0).unwrap();
        let expected = std::f64::consts::PI / (2.0 * std::f64::consts::SQRT_2);
        assert_abs_diff_eq!(cr.r, expected, epsilon = 1e-6);
    }

    #[test]
    fn r20_at_p1() {
        let cr = chain_ratio(20, 1.0).unwrap();
        let expected = (std::f64::consts::PI / (2.0 * std::f64::consts::SQRT_2)).powi(20);
        assert_abs_diff_eq!(cr.r_n, expected, epsilon = 1e-3);
        assert_abs_diff_eq!(cr.r_n, 8.1677, epsilon = 2e-3);
    }

    #[test]
    fn factorization_matches_direct_2d() {
        for p in [1.0, 4.0 / 3.0] {
            let direct = cube_norm_direct(2, p, 1024).unwrap();
            let factored = factor_norm(p).unwrap().powi(2);
            assert!((direct - factored).abs() < 1e-4, "p = {p}: {direct} vs {factored}");
        }
    }

    #[test]
    fn factorization_matches_direct_3d() {
        let p = 4.0 / 3.0;
        let direct = cube_norm_direct(3, p, 128).unwrap();
        let factored = factor_norm(p).unwrap().powi(3);
        assert!((direct - factored).abs() < 1e-4, "{direct} vs {factored}");
    }

    #[test]
    fn growth_table_strictly_increasing_below_2() {
        let ns: Vec<usize> = (1..=20).collect();
        let rep = chain_growth_table(&ns, 4.0 / 3.0).unwrap();
        assert!(rep.series.windows(2).all(|w| w[1].1 > w[0].1));
        assert!(!rep.flags.is_empty());
    }

    #[test]
    fn growth_table_flat_at_2() {
        let rep = chain_growth_table(&[1, 5, 10], 2.0).unwrap();
        for &(_, v) in &rep.series {
            assert_relative_eq!(v, 1.0, max_relative = 1e-12);
        }
        assert!(rep.flags.is_empty());
    }
}
