use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A majorant family `psi` on `(0, delta0)` with `psi(delta)/delta -> +inf`
/// as `delta -> 0+`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PsiSpec {
    /// `psi(delta) = delta^alpha`, `0 < alpha < 1`.
    Power { alpha: f64, delta0: f64 },
    /// `psi(delta) = delta * ln(1/delta)^beta`, `beta > 0`.
    PowerLog { beta: f64, delta0: f64 },
    /// Piecewise-linear interpolation of `(delta, psi)` pairs in log-log
    /// space; extrapolates with the end slopes.
    Table { points: Vec<(f64, f64)>, delta0: f64 },
}

impl PsiSpec {
    pub fn power(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::PsiDivergence {
                reason: format!("power family needs alpha in (0,1); alpha = {alpha} makes psi(d)/d = d^(alpha-1) bounded"),
            });
        }
        Ok(PsiSpec::Power { alpha, delta0: 1.0 })
    }

    pub fn power_log(beta: f64) -> Result<Self> {
        if !(beta > 0.0) {
            return Err(Error::PsiDivergence {
                reason: format!("power-log family needs beta > 0, got {beta}"),
            });
        }
        // psi(d)/d = ln(1/d)^beta diverges; keep d below 1/e so the log is >= 1
        Ok(PsiSpec::PowerLog { beta, delta0: (-1.0f64).exp() })
    }

    /// A tabulated majorant. The ratio `psi/delta` must be non-increasing in
    /// `delta` near the small end of the table, otherwise the divergence
    /// hypothesis cannot be certified from the data.
    pub fn table(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::param("points", "need at least two table points"));
        }
        let mut pts = points;
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if pts.iter().any(|&(d, v)| !(d > 0.0 && v > 0.0)) {
            return Err(Error::param("points", "table entries must be positive"));
        }
        let ratios: Vec<f64> = pts.iter().map(|&(d, v)| v / d).collect();
        if ratios.windows(2).any(|w| w[0] <= w[1]) {
            // ratio should grow toward small delta (index 0 is smallest delta)
            return Err(Error::PsiDivergence {
                reason: "tabulated psi(d)/d does not increase toward small d".into(),
            });
        }
        let delta0 = pts[pts.len() - 1].0;
        Ok(PsiSpec::Table { points: pts, delta0 })
    }

    pub fn delta0(&self) -> f64 {
        match *self {
            PsiSpec::Power { delta0, .. } | PsiSpec::PowerLog { delta0, .. } | PsiSpec::Table { delta0, .. } => delta0,
        }
    }

    pub fn eval(&self, delta: f64) -> f64 {
        match self {
            PsiSpec::Power { alpha, .. } => delta.powf(*alpha),
            PsiSpec::PowerLog { beta, .. } => delta * (1.0 / delta).ln().powf(*beta),
            PsiSpec::Table { points, .. } => {
                let ld = delta.ln();
                let logs: Vec<(f64, f64)> = points.iter().map(|&(d, v)| (d.ln(), v.ln())).collect();
                let val = if ld <= logs[0].0 {
                    interp(logs[0], logs[1], ld)
                } else if ld >= logs[logs.len() - 1].0 {
                    interp(logs[logs.len() - 2], logs[logs.len() - 1], ld)
                } else {
                    let i = logs.partition_point(|p| p.0 < ld).max(1);
                    interp(logs[i - 1], logs[i], ld)
                };
                val.exp()
            }
        }
    }

    /// `ln(psi(3^-n) / 3^-n)` computed without forming `3^-n`, so condition
    /// solving stays exact far past f64 underflow.
    pub fn ln_ratio_at_triadic(&self, n: u64) -> f64 {
        let ln3 = 3.0f64.ln();
        let ln_delta = -(n as f64) * ln3;
        match self {
            PsiSpec::Power { alpha, .. } => (alpha - 1.0) * ln_delta,
            PsiSpec::PowerLog { beta, .. } => beta * (-ln_delta).ln(),
            PsiSpec::Table { points, .. } => {
                let logs: Vec<(f64, f64)> = points.iter().map(|&(d, v)| (d.ln(), v.ln() - d.ln())).collect();
                if ln_delta <= logs[0].0 {
                    interp(logs[0], logs[1], ln_delta)
                } else {
                    let i = logs.partition_point(|p| p.0 < ln_delta).max(1).min(logs.len() - 1);
                    interp(logs[i - 1], logs[i], ln_delta)
                }
            }
        }
    }

    /// `ln` of the regularized ratio `inf_{0 < t <= 3^-n} psi(t)/t`, in log
    /// space. For monotone families this equals [`PsiSpec::ln_ratio_at_triadic`];
    /// for tables the infimum runs over the evaluation point, the knots below
    /// it, and the left-end extrapolation trend (`-inf` when the trend sinks).
    pub fn ln_ratio_tilde_at_triadic(&self, n: u64) -> f64 {
        if self.ratio_monotone() {
            return self.ln_ratio_at_triadic(n);
        }
        let PsiSpec::Table { points, .. } = self else {
            return self.ln_ratio_at_triadic(n);
        };
        let ln3 = 3.0f64.ln();
        let ln_delta = -(n as f64) * ln3;
        let mut inf = self.ln_ratio_at_triadic(n);
        let logs: Vec<(f64, f64)> = points.iter().map(|&(d, v)| (d.ln(), v.ln() - d.ln())).collect();
        for &(ld, lr) in &logs {
            if ld <= ln_delta {
                inf = inf.min(lr);
            }
        }
        // left-end extrapolation: the ratio line must rise toward small t
        // (lr decreasing in ld), otherwise the infimum sinks without bound
        if logs.len() >= 2 && logs[1].1 > logs[0].1 {
            return f64::NEG_INFINITY;
        }
        inf
    }

    /// Whether `t -> psi(t)/t` is non-increasing on a log grid of `(0, delta0]`.
    /// The parametric families are monotone by construction; tables are
    /// checked point by point.
    pub fn ratio_monotone(&self) -> bool {
        match self {
            PsiSpec::Power { .. } | PsiSpec::PowerLog { .. } => true,
            PsiSpec::Table { points, .. } => {
                points.windows(2).all(|w| w[0].1 / w[0].0 >= w[1].1 / w[1].0)
            }
        }
    }

    /// The regularization `psi~(delta) = delta * inf_{0 < t <= delta} psi(t)/t`.
    /// Coincides with `psi` when the ratio is already monotone. The infimum is
    /// taken over a log grid refined enough for the piecewise-linear table.
    pub fn psi_tilde(&self, delta: f64) -> f64 {
        if self.ratio_monotone() {
            return self.eval(delta);
        }
        let mut inf = f64::INFINITY;
        let steps = 512;
        // scan t in (delta * 1e-9, delta] logarithmically plus table knots
        for i in 0..=steps {
            let t = delta * (10f64).powf(-9.0 * (steps - i) as f64 / steps as f64);
            inf = inf.min(self.eval(t) / t);
        }
        if let PsiSpec::Table { points, .. } = self {
            for &(d, v) in points {
                if d <= delta {
                    inf = inf.min(v / d);
                }
            }
        }
        delta * inf
    }
}

fn interp(p0: (f64, f64), p1: (f64, f64), x: f64) -> f64 {
    let t = (x - p0.0) / (p1.0 - p0.0);
    p0.1 + t * (p1.1 - p0.1)
}
