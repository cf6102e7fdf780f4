//! Least-squares fitting of power laws in log-log space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Result of fitting `value ~ constant * x^exponent` by least squares on
/// `(log x, log value)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExponentFit {
    pub exponent: f64,
    pub constant: f64,
    pub r2: f64,
    pub points_used: usize,
    /// The abscissae that entered the fit (window sizes, N values, ...).
    pub scales: Vec<f64>,
}

/// Plain linear least squares on `(x, y)`; returns `(slope, intercept, r2)`.
pub fn linear(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let r2 = if syy > 0.0 { (sxy * sxy) / (sxx * syy) } else { 1.0 };
    (slope, intercept, r2)
}

/// Fits a power law through `(x, value)` samples. Requires at least
/// `min_points` strictly positive samples.
pub fn power_law(xs: &[f64], values: &[f64], min_points: usize) -> Result<ExponentFit> {
    let pairs: Vec<(f64, f64)> = xs
        .iter()
        .zip(values)
        .filter(|&(&x, &v)| x > 0.0 && v > 0.0)
        .map(|(&x, &v)| (x, v))
        .collect();
    if pairs.len() < min_points {
        return Err(Error::param(
            "samples",
            format!("need at least {min_points} positive samples, got {}", pairs.len()),
        ));
    }
    let lx: Vec<f64> = pairs.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = pairs.iter().map(|p| p.1.ln()).collect();
    let (slope, intercept, r2) = linear(&lx, &ly);
    Ok(ExponentFit {
        exponent: slope,
        constant: intercept.exp(),
        r2,
        points_used: pairs.len(),
        scales: pairs.iter().map(|p| p.0).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exact_power_law_recovered() {
        let xs: Vec<f64> = (1..10).map(|k| 2f64.powi(k)).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.powf(0.4)).collect();
        let fit = power_law(&xs, &ys, 4).unwrap();
        assert_relative_eq!(fit.exponent, 0.4, max_relative = 1e-12);
        assert_relative_eq!(fit.constant, 3.0, max_relative = 1e-10);
        assert!(fit.r2 > 1.0 - 1e-12);
    }

    #[test]
    fn too_few_points_rejected() {
        assert!(power_law(&[1.0, 2.0], &[1.0, 2.0], 4).is_err());
    }
}
