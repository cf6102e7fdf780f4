//! Random-sign experiments: Rademacher averages of character sums and the
//! Khintchine lower-bound ratio.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{check_grid, ProbeReport, TrigPolynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignMode {
    /// Enumerate all `2^n` sign patterns (capped at `n = 20`).
    Exhaustive,
    /// Sample patterns with a seeded generator.
    MonteCarlo,
}

const EXHAUSTIVE_CAP: usize = 20;

/// `(E_theta |sum c_j r_j|^p)^{1/p} / (sum c_j^2)^{1/2}` for `p in [1, 2)`.
///
/// Exhaustive mode averages over all `2^n` patterns; Monte Carlo uses
/// `trials` seeded draws. The ratio lies in `(0, 1]`.
pub fn khintchine_ratio(coeffs: &[f64], p: f64, mode: SignMode, trials: usize, seed: u64) -> Result<f64> {
    if coeffs.is_empty() || coeffs.iter().all(|&c| c == 0.0) {
        return Err(Error::param("coeffs", "need a nonzero coefficient vector"));
    }
    if !(1.0..2.0).contains(&p) {
        return Err(Error::param("p", format!("{p} must lie in [1, 2)")));
    }
    let l2 = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    let n = coeffs.len();
    let mean_pow = match mode {
        SignMode::Exhaustive => {
            if n > EXHAUSTIVE_CAP {
                return Err(Error::param(
                    "coeffs",
                    format!("{n} coefficients exceed the exhaustive cap {EXHAUSTIVE_CAP}; use Monte Carlo"),
                ));
            }
            let total: f64 = (0u64..1 << n)
                .map(|mask| {
                    let mut s = 0.0;
                    for (j, &c) in coeffs.iter().enumerate() {
                        if mask >> j & 1 == 1 {
                            s -= c;
                        } else {
                            s += c;
                        }
                    }
                    s.abs().powf(p)
                })
                .sum();
            total / (1u64 << n) as f64
        }
        SignMode::MonteCarlo => {
            if trials == 0 {
                return Err(Error::param("trials", "need at least one Monte Carlo trial"));
            }
            let sums: Vec<f64> = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
                    let mut s = 0.0;
                    for &c in coeffs {
                        if rng.gen::<bool>() {
                            s += c;
                        } else {
                            s -= c;
                        }
                    }
                    s.abs().powf(p)
                })
                .collect();
            sums.iter().sum::<f64>() / trials as f64
        }
    };
    Ok(mean_pow.powf(1.0 / p) / l2)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RademacherConfig {
    /// Length of the ambient progression (the Dirichlet reference size N).
    pub ambient_n: usize,
    pub p: f64,
    pub mode: SignMode,
    /// Monte Carlo sample count (ignored in exhaustive mode).
    pub trials: usize,
    pub seed: u64,
    /// FFT grid size; must hold the largest frequency alias-free.
    pub grid: usize,
}

/// Averages `||sum_j r_j e^{i k_j x}||_p^p` over sign patterns and compares
/// against the Dirichlet reference `||sum_{k=1}^N e^{ikx}||_p` and the
/// Khintchine floor `c * nu^{1/2}`.
///
/// Reported scalars:
/// - `theta_mean_norm`: the p-th root of the sign-averaged p-th power,
/// - `dirichlet_rhs`: the reference kernel norm,
/// - `khintchine_floor`: empirical Khintchine constant times `sqrt(nu)`,
/// - `diagnostic`: `nu^{1/2} / N^{1/q}` — bounded when splitting sizes obey
///   the `nu <= c N^{2/q}` regime.
pub fn rademacher_experiment(k_list: &[i64], cfg: &RademacherConfig) -> Result<ProbeReport> {
    let nu = k_list.len();
    if nu == 0 {
        return Err(Error::param("k_list", "need at least one frequency"));
    }
    if !(cfg.p >= 1.0) {
        return Err(Error::param("p", format!("{} must lie in [1, infinity)", cfg.p)));
    }
    if cfg.ambient_n == 0 {
        return Err(Error::param("ambient_n", "the ambient progression length must be positive"));
    }
    let max_freq = k_list.iter().map(|k| k.abs()).max().unwrap().max(cfg.ambient_n as i64);
    check_grid(cfg.grid, max_freq)?;
    let m = cfg.grid;

    // basis rows e^{i k_j x} on the grid
    let rows: Vec<Vec<Complex64>> = k_list
        .iter()
        .map(|&k| {
            (0..m)
                .map(|j| {
                    let x = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                    let kx = k as f64 * x;
                    Complex64::new(kx.cos(), kx.sin())
                })
                .collect()
        })
        .collect();

    let norm_p_pow = |signal: &[Complex64]| -> f64 {
        let s: f64 = signal.iter().map(|c| c.norm().powf(cfg.p)).sum();
        s / m as f64
    };

    let (mean_pow, trials_used) = match cfg.mode {
        SignMode::Exhaustive => {
            if nu > EXHAUSTIVE_CAP {
                return Err(Error::param(
                    "k_list",
                    format!("{nu} frequencies exceed the exhaustive cap {EXHAUSTIVE_CAP}; use Monte Carlo"),
                ));
            }
            // Gray-code walk: one sign flip per step
            let mut signal: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); m];
            for row in &rows {
                for (s, r) in signal.iter_mut().zip(row) {
                    *s += r;
                }
            }
            let mut signs = vec![1.0f64; nu];
            let mut total = norm_p_pow(&signal);
            let patterns = 1u64 << nu;
            for step in 1..patterns {
                let bit = step.trailing_zeros() as usize;
                let delta = -2.0 * signs[bit];
                signs[bit] = -signs[bit];
                for (s, r) in signal.iter_mut().zip(&rows[bit]) {
                    *s += r * delta;
                }
                total += norm_p_pow(&signal);
            }
            (total / patterns as f64, patterns as usize)
        }
        SignMode::MonteCarlo => {
            if cfg.trials == 0 {
                return Err(Error::param("trials", "need at least one Monte Carlo trial"));
            }
            let sums: Vec<f64> = (0..cfg.trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(t as u64));
                    let mut signal = vec![Complex64::new(0.0, 0.0); m];
                    for row in &rows {
                        let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                        for (s, r) in signal.iter_mut().zip(row) {
                            *s += r * sign;
                        }
                    }
                    norm_p_pow(&signal)
                })
                .collect();
            (sums.iter().sum::<f64>() / cfg.trials as f64, cfg.trials)
        }
    };

    let theta_mean_norm = mean_pow.powf(1.0 / cfg.p);
    let dirichlet_rhs = TrigPolynomial::dirichlet(cfg.ambient_n).lp_norm(cfg.p, m)?;
    let q = if cfg.p > 1.0 { cfg.p / (cfg.p - 1.0) } else { f64::INFINITY };
    let diagnostic = (nu as f64).sqrt() / (cfg.ambient_n as f64).powf(1.0 / q);
    // empirical Khintchine constant for a flat vector of this length
    let kh_len = nu.min(12);
    let kh_c = if cfg.p < 2.0 {
        khintchine_ratio(&vec![1.0; kh_len], cfg.p, SignMode::Exhaustive, 0, cfg.seed)?
    } else {
        1.0
    };
    let khintchine_floor = kh_c * (nu as f64).sqrt();

    let mut report = ProbeReport::new("rademacher");
    report.seed = Some(cfg.seed);
    report.trials = Some(trials_used);
    report.params.insert("nu".into(), serde_json::json!(nu));
    report.params.insert("ambient_n".into(), serde_json::json!(cfg.ambient_n));
    report.params.insert("p".into(), serde_json::json!(cfg.p));
    report.params.insert("grid".into(), serde_json::json!(cfg.grid));
    report
        .params
        .insert("mode".into(), serde_json::json!(match cfg.mode { SignMode::Exhaustive => "exhaustive", SignMode::MonteCarlo => "montecarlo" }));
    report.scalars.insert("theta_mean_norm".into(), theta_mean_norm);
    report.scalars.insert("dirichlet_rhs".into(), dirichlet_rhs);
    report.scalars.insert("ratio_vs_rhs".into(), theta_mean_norm / dirichlet_rhs);
    report.scalars.insert("khintchine_floor".into(), khintchine_floor);
    report.scalars.insert("khintchine_constant".into(), kh_c);
    report.scalars.insert("diagnostic_sqrt_nu_over_N1q".into(), diagnostic);
    if cfg.mode == SignMode::MonteCarlo {
        report.flags.push("sign average sampled, not exhaustive".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn khintchine_single_coefficient_is_one() {
        let r = khintchine_ratio(&[1.0], 1.0, SignMode::Exhaustive, 0, 0).unwrap();
        assert_abs_diff_eq!(r, 1.0, epsilon = 1e-15);
        let r = khintchine_ratio(&[3.5, 0.0], 1.5, SignMode::Exhaustive, 0, 0).unwrap();
        assert_abs_diff_eq!(r, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn khintchine_ones10_binomial_oracle() {
        // exhaustive 1024-pattern value: 2^-10 sum_k C(10,k) |10-2k| / sqrt(10)
        let mut binom = [0f64; 11];
        binom[0] = 1.0;
        for k in 1..=10 {
            binom[k] = binom[k - 1] * (11 - k) as f64 / k as f64;
        }
        let expected: f64 = (0..=10).map(|k| binom[k] * (10.0 - 2.0 * k as f64).abs()).sum::<f64>()
            / 1024.0
            / 10f64.sqrt();
        let r = khintchine_ratio(&[1.0; 10], 1.0, SignMode::Exhaustive, 0, 0).unwrap();
        assert_abs_diff_eq!(r, expected, epsilon = 1e-12);
        assert!(r > 0.0 && r <= 1.0);
    }

    #[test]
    fn khintchine_invariances() {
        let base = khintchine_ratio(&[1.0, 2.0, 3.0], 1.3, SignMode::Exhaustive, 0, 0).unwrap();
        let permuted = khintchine_ratio(&[3.0, 1.0, 2.0], 1.3, SignMode::Exhaustive, 0, 0).unwrap();
        let flipped = khintchine_ratio(&[1.0, -2.0, 3.0], 1.3, SignMode::Exhaustive, 0, 0).unwrap();
        assert_abs_diff_eq!(base, permuted, epsilon = 1e-15);
        assert_abs_diff_eq!(base, flipped, epsilon = 1e-15);
    }

    #[test]
    fn khintchine_ratio_in_unit_interval() {
        for p in [1.0, 1.3, 1.7, 1.99] {
            let r = khintchine_ratio(&[0.3, 1.0, 2.5, 0.1, 4.0], p, SignMode::Exhaustive, 0, 0).unwrap();
            assert!(r > 0.0 && r <= 1.0 + 1e-12, "p = {p}: {r}");
        }
    }

    #[test]
    fn khintchine_monte_carlo_close_to_exhaustive() {
        let exact = khintchine_ratio(&[1.0; 8], 1.0, SignMode::Exhaustive, 0, 0).unwrap();
        let mc = khintchine_ratio(&[1.0; 8], 1.0, SignMode::MonteCarlo, 20_000, 99).unwrap();
        assert!((exact - mc).abs() < 0.02, "exact {exact}, mc {mc}");
    }

    #[test]
    fn khintchine_rejects_bad_input() {
        assert!(khintchine_ratio(&[], 1.0, SignMode::Exhaustive, 0, 0).is_err());
        assert!(khintchine_ratio(&[1.0], 2.0, SignMode::Exhaustive, 0, 0).is_err());
        assert!(khintchine_ratio(&[1.0], 0.9, SignMode::Exhaustive, 0, 0).is_err());
        assert!(khintchine_ratio(&[1.0; 21], 1.0, SignMode::Exhaustive, 0, 0).is_err());
    }

    #[test]
    fn single_frequency_norm_one() {
        let cfg = RademacherConfig { ambient_n: 4, p: 2.0, mode: SignMode::Exhaustive, trials: 0, seed: 0, grid: 64 };
        let rep = rademacher_experiment(&[1], &cfg).unwrap();
        assert_abs_diff_eq!(rep.scalars["theta_mean_norm"], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.scalars["dirichlet_rhs"], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn orthogonality_gives_sqrt_nu_at_p2() {
        // every sign pattern of nu distinct characters has L2 norm sqrt(nu)
        let ks: Vec<i64> = (1..=6).map(|j| 3 * j).collect();
        let cfg = RademacherConfig { ambient_n: 18, p: 2.0, mode: SignMode::Exhaustive, trials: 0, seed: 0, grid: 128 };
        let rep = rademacher_experiment(&ks, &cfg).unwrap();
        assert_relative_eq!(rep.scalars["theta_mean_norm"], 6f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn monte_carlo_matches_exhaustive_scale() {
        let ks = vec![1i64, 5, 9, 13];
        let ex = RademacherConfig { ambient_n: 16, p: 4.0 / 3.0, mode: SignMode::Exhaustive, trials: 0, seed: 3, grid: 128 };
        let mc = RademacherConfig { ambient_n: 16, p: 4.0 / 3.0, mode: SignMode::MonteCarlo, trials: 4000, seed: 3, grid: 128 };
        let a = rademacher_experiment(&ks, &ex).unwrap().scalars["theta_mean_norm"];
        let b = rademacher_experiment(&ks, &mc).unwrap().scalars["theta_mean_norm"];
        assert!((a - b).abs() / a < 0.05, "exhaustive {a}, monte carlo {b}");
    }

    #[test]
    fn exhaustive_cap_enforced() {
        let ks: Vec<i64> = (1..=21).collect();
        let cfg = RademacherConfig { ambient_n: 32, p: 1.5, mode: SignMode::Exhaustive, trials: 0, seed: 0, grid: 256 };
        assert!(rademacher_experiment(&ks, &cfg).is_err());
    }
}
