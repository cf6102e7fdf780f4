use crate::error::{Error, Result};

/// An n-chain: the `2^n` points `base + sum_j eps_j * lengths[j]` over all
/// sign patterns `eps in {0,1}^n`, required to be pairwise distinct.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    base: f64,
    lengths: Vec<f64>,
}

impl Chain {
    /// Validates positivity of the lengths and distinctness of the subset
    /// sums (up to `tolerance`; pass 0.0 for exact f64 distinctness).
    pub fn new(base: f64, lengths: Vec<f64>, tolerance: f64) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::param("lengths", "a chain needs at least one length"));
        }
        if lengths.len() > 30 {
            return Err(Error::param("lengths", "chain order capped at 30 (2^n point enumeration)"));
        }
        if let Some(&bad) = lengths.iter().find(|&&l| !(l > 0.0)) {
            return Err(Error::param("lengths", format!("length {bad} is not positive")));
        }
        let chain = Chain { base, lengths };
        let pts = chain.points();
        for w in pts.windows(2) {
            if w[1] - w[0] <= tolerance {
                return Err(Error::param(
                    "lengths",
                    format!("subset sums collide: {} and {} differ by {:.3e}", w[0], w[1], w[1] - w[0]),
                ));
            }
        }
        Ok(chain)
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    /// Chain order n.
    pub fn order(&self) -> usize {
        self.lengths.len()
    }

    /// The `2^n` subset-sum points, sorted ascending.
    pub fn points(&self) -> Vec<f64> {
        let mut pts = vec![self.base];
        for &l in &self.lengths {
            let shifted: Vec<f64> = pts.iter().map(|&p| p + l).collect();
            pts.extend(shifted);
        }
        pts.sort_by(|a, b| a.partial_cmp(b).expect("non-finite chain point"));
        pts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_chain() {
        let c = Chain::new(0.0, vec![1.0, 2.0], 1e-12).unwrap();
        assert_eq!(c.points(), vec![0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn colliding_sums_rejected() {
        // lengths 1,1: points {0,1,1,2} collapse
        assert!(Chain::new(0.0, vec![1.0, 1.0], 1e-12).is_err());
    }

    #[test]
    fn nonpositive_length_rejected() {
        assert!(Chain::new(0.0, vec![1.0, 0.0], 0.0).is_err());
        assert!(Chain::new(0.0, vec![-1.0], 0.0).is_err());
    }
}
