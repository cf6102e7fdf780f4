use super::{Chain, GapSet, PsiSpec};
use crate::error::{Error, Result};

/// One chain of the thin-set construction. The lengths are the exact powers
/// `3^-exponent`; strict growth of the exponents certifies the 2^n subset
/// sums distinct as real numbers even when the f64 images collapse.
#[derive(Debug, Clone)]
pub struct ChainLevel {
    pub order: usize,
    /// `alpha_n = sum of the first n^2 lengths` (f64 image).
    pub base: f64,
    /// Triadic exponents of the chain lengths `l_{n^2+1} .. l_{n^2+n}`.
    pub length_exponents: Vec<u64>,
    /// The chain with f64 lengths, when the 2^n points stay distinct in f64.
    pub materialized: Option<Chain>,
}

impl ChainLevel {
    /// True when the chain's sub-window structure is finer than f64 can
    /// resolve around its base; the gap set then merges its points.
    pub fn collapsed(&self) -> bool {
        self.materialized.is_none()
    }
}

/// Result of the thin-but-uncountably-structured set construction: a slowly
/// accumulating point sequence that is porous, has `|(E)_delta| <= psi(delta)`
/// for small `delta`, and contains an n-chain for every n up to the cutoff.
#[derive(Debug, Clone)]
pub struct ThinChainSet {
    pub set: GapSet,
    /// Sorted distinct f64 points of `S` together with the limit.
    pub points: Vec<f64>,
    /// Accumulation point of the truncated sequence (sum of all lengths).
    pub limit: f64,
    /// Chosen triadic exponents `n_k`, `k = 1 .. K^2 + K`, strictly increasing.
    pub exponents: Vec<u64>,
    pub chains: Vec<ChainLevel>,
    /// Regularization marker: true when `psi(t)/t` needed the
    /// `delta * inf psi(t)/t` replacement (non-monotone tabulated data).
    pub regularized: bool,
}

impl ThinChainSet {
    /// Orders of chains whose sub-f64 structure was merged in the gap set.
    pub fn collapsed_orders(&self) -> Vec<usize> {
        self.chains.iter().filter(|c| c.collapsed()).map(|c| c.order).collect()
    }
}

/// Builds a thin accumulating chain set under a majorant `psi` with chains up to order
/// `k_max`.
///
/// Exponents `n_k` are the minimal strictly increasing integers with
/// `6 * 2^k <= psi(3^-n_k) / 3^-n_k` (solved in log space, so the choice is
/// exact far past f64 underflow); the point sequence stacks the chains
/// `F_n = {sum of first n^2 lengths + subset sums of the next n}` inside
/// pairwise disjoint intervals.
pub fn thin_chain_set(psi: &PsiSpec, k_max: usize) -> Result<ThinChainSet> {
    if k_max == 0 {
        return Err(Error::param("k_max", "need at least one chain order"));
    }
    if k_max > 8 {
        return Err(Error::param("k_max", format!("chain cutoff {k_max} exceeds the cap 8 (needs K^2 + K lengths)")));
    }
    let regularized = !psi.ratio_monotone();
    let needed = k_max * k_max + k_max;

    // condition: ln(psi(3^-n)/3^-n) >= ln 6 + k ln 2, n strictly increasing
    let ln2 = std::f64::consts::LN_2;
    let ln6 = 6f64.ln();
    let mut exponents: Vec<u64> = Vec::with_capacity(needed);
    let mut prev = 0u64;
    for k in 1..=needed {
        let target = ln6 + (k as f64) * ln2;
        let ratio_at = |n: u64| psi.ln_ratio_tilde_at_triadic(n);
        let mut n = prev + 1;
        let mut guard = 0u32;
        while ratio_at(n) < target {
            // exponential probing keeps slow families (psi ~ d log^beta) fast
            let step = ((n - prev) / 2).max(1);
            n += step;
            guard += 1;
            if guard > 10_000 || n > 1 << 40 {
                return Err(Error::PsiDivergence {
                    reason: format!("could not satisfy the growth condition at k = {k} (psi(d)/d grows too slowly or not at all)"),
                });
            }
        }
        // exponential probing may overshoot; walk back to the minimal n
        while n > prev + 1 && ratio_at(n - 1) >= target {
            n -= 1;
        }
        if n <= prev {
            return Err(Error::param("k_max", format!("exponent sequence not strictly increasing at k = {k}")));
        }
        exponents.push(n);
        prev = n;
    }

    // f64 lengths (0.0 when 3^-n underflows)
    let lengths: Vec<f64> = exponents.iter().map(|&n| 3f64.powf(-(n as f64))).collect();
    let prefix_sum = |upto: usize| -> f64 {
        // ascending summation of a decreasing sequence
        lengths[..upto].iter().rev().sum()
    };
    let limit = prefix_sum(needed);

    let mut chains = Vec::with_capacity(k_max);
    let mut points: Vec<f64> = Vec::new();
    for n in 1..=k_max {
        let base = prefix_sum(n * n);
        let chain_lengths: Vec<f64> = lengths[n * n..n * n + n].to_vec();
        let length_exponents: Vec<u64> = exponents[n * n..n * n + n].to_vec();
        let materialized = Chain::new(base, chain_lengths.clone(), 0.0).ok();
        let chain_points = match &materialized {
            Some(c) => c.points(),
            None => {
                // collapsed: enumerate anyway and deduplicate
                let mut pts = vec![base];
                for &l in &chain_lengths {
                    let shifted: Vec<f64> = pts.iter().map(|&p| p + l).collect();
                    pts.extend(shifted);
                }
                pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
                pts.dedup();
                pts
            }
        };
        points.extend(chain_points);
        chains.push(ChainLevel { order: n, base, length_exponents, materialized });
    }
    points.push(limit);
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    points.dedup();

    let mut set = GapSet::from_points(&points)?;
    set.depth = k_max as u32;
    Ok(ThinChainSet { set, points, limit, exponents, chains, regularized })
}
