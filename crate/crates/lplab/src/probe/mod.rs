//! Numerical probes of square-function behaviour on the circle.
//!
//! Sets on the line are scaled into integer frequency space and drive masked
//! DFT band decompositions of trigonometric polynomials. Norms use the
//! normalized measure `dx/2pi`, so characters are unit vectors and
//! `lp_norm` of a constant is the constant.

mod growth;
mod signs;
mod square;

pub use growth::{chain_ratio, cube_norm_direct, factor_norm, chain_growth_table};
pub use signs::{khintchine_ratio, rademacher_experiment, RademacherConfig, SignMode};
pub use square::{admissible_bins, frame_probe, square_function, FrameProbe, FrameProbeConfig};

use std::collections::BTreeMap;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::{self, ExponentFit};

/// Structured record of one numerical experiment. Every stochastic result
/// carries its seed and trial count; maps are ordered so serialization is
/// deterministic.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeReport {
    pub experiment: String,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub params: BTreeMap<String, serde_json::Value>,
    pub scalars: BTreeMap<String, f64>,
    /// Plot-ready `(x, value)` rows.
    pub series: Vec<(f64, f64)>,
    pub flags: Vec<String>,
}

impl ProbeReport {
    pub fn new(experiment: &str) -> Self {
        ProbeReport {
            experiment: experiment.to_string(),
            seed: None,
            trials: None,
            params: BTreeMap::new(),
            scalars: BTreeMap::new(),
            series: Vec::new(),
            flags: Vec::new(),
        }
    }
}

/// A finite trigonometric polynomial `sum c_k e^{ikx}` with distinct integer
/// frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    terms: Vec<(i64, Complex64)>,
}

impl TrigPolynomial {
    pub fn new(mut terms: Vec<(i64, Complex64)>) -> Result<Self> {
        terms.sort_by_key(|t| t.0);
        if terms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::param("terms", "duplicate frequency"));
        }
        Ok(TrigPolynomial { terms })
    }

    /// The one-sided Dirichlet kernel `sum_{k=1}^n e^{ikx}`.
    pub fn dirichlet(n: usize) -> Self {
        let terms = (1..=n as i64).map(|k| (k, Complex64::new(1.0, 0.0))).collect();
        TrigPolynomial { terms }
    }

    pub fn terms(&self) -> &[(i64, Complex64)] {
        &self.terms
    }

    pub fn max_abs_freq(&self) -> i64 {
        self.terms.iter().map(|t| t.0.abs()).max().unwrap_or(0)
    }

    /// Smallest power-of-two grid holding the polynomial alias-free with the
    /// four-fold oversampling the norm quadrature assumes.
    pub fn min_grid(&self) -> usize {
        let required = (4 * self.max_abs_freq().max(1)) as usize;
        required.next_power_of_two().max(8)
    }

    /// Coefficient l2 norm (equals the L2 norm by Parseval).
    pub fn coeff_l2(&self) -> f64 {
        self.terms.iter().map(|t| t.1.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Samples on the uniform grid `x_j = 2 pi j / m`.
    pub fn evaluate(&self, m: usize) -> Result<GridSignal> {
        check_grid(m, self.max_abs_freq())?;
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        for &(k, c) in &self.terms {
            let bin = k.rem_euclid(m as i64) as usize;
            buf[bin] = c;
        }
        let mut planner = FftPlanner::new();
        planner.plan_fft_inverse(m).process(&mut buf);
        Ok(GridSignal { samples: buf })
    }

    /// Quadrature L^p norm on an `m`-point grid.
    pub fn lp_norm(&self, p: f64, m: usize) -> Result<f64> {
        self.evaluate(m)?.lp_norm(p)
    }
}

/// Samples of a band-limited function on the uniform grid `x_j = 2 pi j / m`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSignal {
    samples: Vec<Complex64>,
}

impl GridSignal {
    pub fn from_samples(samples: Vec<Complex64>) -> Result<Self> {
        let m = samples.len();
        if m < 8 || !m.is_power_of_two() {
            return Err(Error::param("samples", format!("grid size {m} must be a power of two >= 8")));
        }
        Ok(GridSignal { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// Fourier coefficients by forward FFT; bin `k` holds the coefficient of
    /// `e^{ikx}` for `k` in `[0, m/2)` and of `e^{i(k-m)x}` above.
    pub fn spectrum(&self) -> Vec<Complex64> {
        let m = self.samples.len();
        let mut buf = self.samples.clone();
        let mut planner = FftPlanner::new();
        planner.plan_fft_forward(m).process(&mut buf);
        let scale = 1.0 / m as f64;
        for c in &mut buf {
            *c *= scale;
        }
        buf
    }

    /// `((1/m) sum |f(x_j)|^p)^{1/p}` for `p >= 1`.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::param("p", format!("{p} must lie in [1, infinity)")));
        }
        let m = self.samples.len() as f64;
        if p == 2.0 {
            // exact route: mean of |f|^2 without powf
            let s: f64 = self.samples.iter().map(|c| c.norm_sqr()).sum();
            return Ok((s / m).sqrt());
        }
        let s: f64 = self.samples.iter().map(|c| c.norm().powf(p)).sum();
        Ok((s / m).powf(1.0 / p))
    }
}

pub(crate) fn check_grid(m: usize, max_freq: i64) -> Result<()> {
    if m < 8 || !m.is_power_of_two() {
        return Err(Error::param("m", format!("grid size {m} must be a power of two >= 8")));
    }
    let required = (4 * max_freq.max(0)) as usize;
    if m < required {
        return Err(Error::Aliasing { m, freq: max_freq, required });
    }
    Ok(())
}

/// Fits `||sum_{k=1}^N e^{ikx}||_p ~ c N^s` over the given kernel sizes and
/// reports the fitted `s`; the conjugate-exponent target is `1/q`, `q = p/(p-1)`.
pub fn dirichlet_scaling(p: f64, n_list: &[usize]) -> Result<DirichletScaling> {
    if !(p > 1.0) {
        return Err(Error::param("p", format!("{p} must exceed 1 (the p = 1 kernel norm grows like log N)")));
    }
    if n_list.len() < 4 {
        return Err(Error::param("n_list", "need at least 4 kernel sizes"));
    }
    let norms: Vec<f64> = n_list
        .iter()
        .map(|&n| {
            let poly = TrigPolynomial::dirichlet(n);
            let m = poly.min_grid().max(512);
            poly.lp_norm(p, m)
        })
        .collect::<Result<_>>()?;
    let xs: Vec<f64> = n_list.iter().map(|&n| n as f64).collect();
    let fit = fit::power_law(&xs, &norms, 4)?;
    let q = p / (p - 1.0);
    Ok(DirichletScaling { fit, p, q, target_exponent: 1.0 / q, norms })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DirichletScaling {
    pub fit: ExponentFit,
    pub p: f64,
    pub q: f64,
    /// `1/q`, the classical kernel growth rate.
    pub target_exponent: f64,
    pub norms: Vec<f64>,
}
