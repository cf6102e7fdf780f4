use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a gap-length sequence was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GapFamily {
    Explicit,
    /// `delta_k = a * exp(-k * b)`.
    Geometric { a: f64, b: f64 },
    /// `delta_k = a * exp(-k * b(k))` with `b(x) = 1 / gamma(e^{-x})` for
    /// `gamma(t) = c / ln(e + 1/t)^eta` (non-decreasing, -> 0 at 0+).
    Stretched { a: f64, eta: f64, c: f64 },
    Custom(String),
}

/// An ordered sequence of positive gap lengths `delta_1 > delta_2 > ...`
/// used to generate perfect sets in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapSequence {
    deltas: Vec<f64>,
    family: GapFamily,
}

/// Terms below this floor are dropped by the generator families; the
/// truncated tail is then far below every representable length scale.
const TERM_FLOOR: f64 = 1e-15;
const MAX_TERMS: usize = 1 << 16;

impl GapSequence {
    /// Wraps explicit positive lengths.
    pub fn explicit(deltas: Vec<f64>) -> Result<Self> {
        if deltas.is_empty() {
            return Err(Error::param("deltas", "empty gap sequence"));
        }
        if let Some(&bad) = deltas.iter().find(|&&d| !(d > 0.0)) {
            return Err(Error::param("deltas", format!("gap length {bad} is not positive")));
        }
        Ok(GapSequence { deltas, family: GapFamily::Explicit })
    }

    /// `delta_k = a e^{-kb}`, truncated once terms drop below 1e-15.
    pub fn geometric(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::param("a", format!("{a} must be positive")));
        }
        if !(b > 0.0) {
            return Err(Error::param("b", format!("{b} must be positive (decay rate)")));
        }
        // iterate delta_k = a r^k by repeated multiplication: one rounding per
        // step, and exact when r is a power of two (b = ln 2 gives 2^-k)
        let r = (-b).exp();
        let mut deltas = Vec::new();
        let mut term = a;
        for _ in 1..=MAX_TERMS {
            term *= r;
            if term < TERM_FLOOR {
                break;
            }
            deltas.push(term);
        }
        if deltas.is_empty() {
            return Err(Error::param("a", "first term already below the representable floor"));
        }
        Ok(GapSequence { deltas, family: GapFamily::Geometric { a, b } })
    }

    /// Geometric family with `a` chosen so the full series sums to one:
    /// `a = e^b - 1`. With `b = ln 2` this is `delta_k = 2^{-k}`.
    pub fn geometric_normalized(b: f64) -> Result<Self> {
        if !(b > 0.0) {
            return Err(Error::param("b", format!("{b} must be positive")));
        }
        Self::geometric(b.exp() - 1.0, b)
    }

    /// Stretched family `delta_k = a e^{-k b(k)}`, `b(x) = ln(e + e^x)^eta / c`,
    /// normalized numerically so the truncated sum is one. The paper's
    /// normalization `gamma(1/e) = 1/4` fixes `c = ln(e + e)^eta / 4`.
    pub fn stretched(eta: f64) -> Result<Self> {
        if !(eta > 0.0) {
            return Err(Error::param("eta", format!("{eta} must be positive")));
        }
        let c = (std::f64::consts::E + std::f64::consts::E).ln().powf(eta) / 4.0;
        let b = |x: f64| (std::f64::consts::E + x.exp()).ln().powf(eta) / c;
        let mut raw = Vec::new();
        for k in 1..=MAX_TERMS {
            let kf = k as f64;
            let d = (-kf * b(kf)).exp();
            if !(d > 0.0) || d < TERM_FLOOR * 1e-3 {
                break;
            }
            raw.push(d);
        }
        let total: f64 = raw.iter().sum();
        if !(total > 0.0) {
            return Err(Error::param("eta", "stretched family underflows immediately"));
        }
        let a = 1.0 / total;
        let deltas: Vec<f64> = raw.iter().map(|d| d * a).filter(|&d| d >= TERM_FLOOR).collect();
        Ok(GapSequence { deltas, family: GapFamily::Stretched { a, eta, c } })
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    pub fn family(&self) -> &GapFamily {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    pub fn sum(&self) -> f64 {
        // ascending order limits accumulation error
        let mut sorted = self.deltas.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        sorted.iter().sum()
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.deltas.windows(2).all(|w| w[1] < w[0])
    }

    /// Successive ratios `delta_{k+1} / delta_k` (the Hare-Klemes data).
    pub fn ratios(&self) -> Vec<f64> {
        self.deltas.windows(2).map(|w| w[1] / w[0]).collect()
    }

    /// Checks the Hare-Klemes condition `delta_{k+1}/delta_k <= tau` for a
    /// user-supplied `tau`; returns the first violating index if any.
    pub fn hare_klemes_violation(&self, tau: f64) -> Option<usize> {
        self.ratios().iter().position(|&r| r > tau)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_normalized_is_dyadic_for_ln2() {
        let seq = GapSequence::geometric_normalized(std::f64::consts::LN_2).unwrap();
        assert!((seq.deltas()[0] - 0.5).abs() < 1e-15);
        assert!((seq.deltas()[1] - 0.25).abs() < 1e-15);
        assert!((seq.sum() - 1.0).abs() < 1e-9);
        assert!(seq.is_strictly_decreasing());
    }

    #[test]
    fn explicit_rejects_nonpositive() {
        assert!(GapSequence::explicit(vec![0.5, 0.0]).is_err());
        assert!(GapSequence::explicit(vec![]).is_err());
    }

    #[test]
    fn stretched_sums_to_one_and_ratios_vanish() {
        let seq = GapSequence::stretched(1.0).unwrap();
        assert!((seq.sum() - 1.0).abs() < 1e-9, "sum = {}", seq.sum());
        assert!(seq.is_strictly_decreasing());
        let ratios = seq.ratios();
        // condition (12): ratios tend to zero, so the tail ratio is far
        // below the head ratio
        assert!(ratios[ratios.len() - 1] < 0.5 * ratios[0]);
    }

    #[test]
    fn hare_klemes_check() {
        let seq = GapSequence::geometric_normalized(std::f64::consts::LN_2).unwrap();
        assert_eq!(seq.hare_klemes_violation(0.5 + 1e-12), None);
        assert!(seq.hare_klemes_violation(0.25).is_some());
    }
}
