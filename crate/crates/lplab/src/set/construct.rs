use super::{GapSequence, GapSet};
use crate::error::{Error, Result};

/// Default cap on recursive construction depth (2^20 gaps at the limit).
pub const MAX_DEPTH: u32 = 20;
/// Default cap on sum-set generators (2^20 points at the limit).
pub const MAX_SUM_LENGTHS: usize = 20;

/// The truncated lacunary set `{0} U {+-2^k, k_min <= k <= k_max}` on the
/// window `[-2^k_max, 2^k_max]`; every component is a point.
pub fn dyadic_set(k_min: i32, k_max: i32) -> Result<GapSet> {
    if k_min > k_max {
        return Err(Error::param("k_min", format!("k_min = {k_min} exceeds k_max = {k_max}")));
    }
    let mut points = vec![0.0];
    for k in k_min..=k_max {
        let p = 2f64.powi(k);
        points.push(p);
        points.push(-p);
    }
    let mut set = GapSet::from_points(&points)?;
    set.depth = (k_max - k_min) as u32;
    Ok(set)
}

/// Middle-thirds construction on `[0, 1]` truncated at `depth`:
/// `2^depth` components of length `3^-depth`.
pub fn cantor_triadic(depth: u32) -> Result<GapSet> {
    if depth > MAX_DEPTH {
        return Err(Error::param("depth", format!("depth {depth} exceeds the cap {MAX_DEPTH}")));
    }
    let mut comps = vec![(0.0f64, 1.0f64)];
    let mut gaps = Vec::with_capacity((1usize << depth).saturating_sub(1));
    for _ in 0..depth {
        let mut next = Vec::with_capacity(comps.len() * 2);
        for (l, r) in comps {
            let third = (r - l) / 3.0;
            // l + 2*third, not r - third: keeps endpoints on the exact
            // doubles of the triadic rationals (2 * f64(1/3) == f64(2/3))
            let a = l + third;
            let b = l + 2.0 * third;
            gaps.push((a, b));
            next.push((l, a));
            next.push((b, r));
        }
        comps = next;
    }
    GapSet::with_depth((0.0, 1.0), gaps, depth)
}

/// Checks `l_{k+1} < l_k / 2` and positivity.
pub(crate) fn check_decay(lengths: &[f64]) -> Result<()> {
    if let Some(&bad) = lengths.iter().find(|&&l| !(l > 0.0)) {
        return Err(Error::param("lengths", format!("length {bad} is not positive")));
    }
    for (i, w) in lengths.windows(2).enumerate() {
        if w[1] >= w[0] / 2.0 {
            return Err(Error::DecayViolation { index: i + 1, value: w[1], limit: w[0] / 2.0 });
        }
    }
    Ok(())
}

/// All `2^K` subset sums of rapidly decaying generators `l_1 > 2 l_2 > ...`
/// as a point set on `[0, sum l_k]`. The decay makes the sums distinct and
/// orders them lexicographically in the indicator vector.
pub fn sum_set(lengths: &[f64]) -> Result<GapSet> {
    if lengths.is_empty() {
        return Err(Error::param("lengths", "need at least one generator"));
    }
    if lengths.len() > MAX_SUM_LENGTHS {
        return Err(Error::param(
            "lengths",
            format!("{} generators exceed the cap {MAX_SUM_LENGTHS} (2^K points)", lengths.len()),
        ));
    }
    check_decay(lengths)?;
    let mut points = vec![0.0f64];
    for &l in lengths {
        let shifted: Vec<f64> = points.iter().map(|&p| p + l).collect();
        points.extend(shifted);
    }
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for w in points.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::param("lengths", "subset sums collide at f64 resolution"));
        }
    }
    let mut set = GapSet::from_points(&points)?;
    set.depth = lengths.len() as u32;
    Ok(set)
}

/// A perfect-set truncation on `[0, 1]` generated by a gap sequence.
///
/// Gap `k` is assigned to node `k` of a binary tree in breadth-first order;
/// nodes `1 .. 2^depth - 1` (capped by the sequence length) are placed. The
/// span of node `k` has length `L_k = delta_k + L_2k + L_2k+1`, with subtree
/// sums taken over indices up to `2^(depth+1) - 1`, so unplaced children
/// leave positive margins around deeper gaps.
pub fn generated_set(seq: &GapSequence, depth: u32) -> Result<GapSet> {
    if depth > MAX_DEPTH {
        return Err(Error::param("depth", format!("depth {depth} exceeds the cap {MAX_DEPTH}")));
    }
    let sum = seq.sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized { sum, expected: 1.0, tolerance: 1e-9 });
    }
    if !seq.is_strictly_decreasing() {
        return Err(Error::param("seq", "gap lengths must be strictly decreasing"));
    }
    let deltas = seq.deltas();
    if depth == 0 {
        return GapSet::with_depth((0.0, 1.0), Vec::new(), 0);
    }

    // subtree sums over the horizon (one level past the placed nodes)
    let horizon = deltas.len().min((1usize << (depth + 1)) - 1);
    let mut subtree = vec![0.0f64; horizon + 1];
    for k in (1..=horizon).rev() {
        let left = if 2 * k <= horizon { subtree[2 * k] } else { 0.0 };
        let right = if 2 * k < horizon { subtree[2 * k + 1] } else { 0.0 };
        subtree[k] = deltas[k - 1] + left + right;
    }

    let placed_max = deltas.len().min((1usize << depth) - 1);
    let mut gaps = Vec::with_capacity(placed_max);
    // iterative DFS: (node, left edge of its span)
    let mut stack = vec![(1usize, 0.0f64)];
    while let Some((k, x)) = stack.pop() {
        if k > placed_max {
            continue;
        }
        let left = if 2 * k <= horizon { subtree[2 * k] } else { 0.0 };
        let a = x + left;
        gaps.push((a, a + deltas[k - 1]));
        stack.push((2 * k, x));
        stack.push((2 * k + 1, a + deltas[k - 1]));
    }
    GapSet::with_depth((0.0, 1.0), gaps, depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn dyadic_enumeration() {
        let s = dyadic_set(0, 2).unwrap();
        let pts: Vec<f64> = s.components().iter().map(|c| c.0).collect();
        assert_eq!(pts, vec![-4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0]);
        assert_eq!(s.gaps().len(), 6);
        assert_eq!(s.residual(), 0.0);
    }

    #[test]
    fn dyadic_single_scale() {
        let s = dyadic_set(0, 0).unwrap();
        let pts: Vec<f64> = s.components().iter().map(|c| c.0).collect();
        assert_eq!(pts, vec![-1.0, 0.0, 1.0]);
    }

    #[test]
    fn dyadic_rejects_inverted_range() {
        assert!(dyadic_set(3, 1).is_err());
    }

    #[test]
    fn cantor_first_levels() {
        let s0 = cantor_triadic(0).unwrap();
        assert_eq!(s0.components(), &[(0.0, 1.0)]);
        let s1 = cantor_triadic(1).unwrap();
        assert_eq!(s1.components(), &[(0.0, 1.0 / 3.0), (2.0 / 3.0, 1.0)]);
        let s2 = cantor_triadic(2).unwrap();
        assert_eq!(s2.components().len(), 4);
        for &(l, r) in s2.components() {
            assert_abs_diff_eq!(r - l, 1.0 / 9.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn cantor_residual_and_count() {
        for depth in [3u32, 6, 10] {
            let s = cantor_triadic(depth).unwrap();
            assert_eq!(s.components().len(), 1 << depth);
            assert_abs_diff_eq!(s.residual(), (2f64 / 3.0).powi(depth as i32), epsilon = 1e-12);
        }
    }

    #[test]
    fn cantor_depth_cap() {
        assert!(cantor_triadic(MAX_DEPTH + 1).is_err());
    }

    #[test]
    fn sum_set_small_cases() {
        let s = sum_set(&[1.0]).unwrap();
        let pts: Vec<f64> = s.components().iter().map(|c| c.0).collect();
        assert_eq!(pts, vec![0.0, 1.0]);

        let s = sum_set(&[1.0, 1.0 / 3.0]).unwrap();
        let pts: Vec<f64> = s.components().iter().map(|c| c.0).collect();
        assert_eq!(pts, vec![0.0, 1.0 / 3.0, 1.0, 1.0 + 1.0 / 3.0]);
    }

    #[test]
    fn sum_set_rejects_slow_decay() {
        let err = sum_set(&[1.0, 0.6]).unwrap_err();
        assert!(matches!(err, Error::DecayViolation { index: 1, .. }));
        assert!(sum_set(&[1.0, 0.5]).is_err()); // equality is still too slow
    }

    #[test]
    fn sum_set_cardinality_and_order() {
        let lengths: Vec<f64> = (0..8).map(|k| 0.45f64.powi(k)).collect();
        let s = sum_set(&lengths).unwrap();
        assert_eq!(s.components().len(), 1 << 8);
        let pts: Vec<f64> = s.components().iter().map(|c| c.0).collect();
        assert!(pts.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn generated_depth0_is_window() {
        let seq = GapSequence::geometric_normalized(std::f64::consts::LN_2).unwrap();
        let s = generated_set(&seq, 0).unwrap();
        assert_eq!(s.components(), &[(0.0, 1.0)]);
    }

    #[test]
    fn generated_depth1_places_root_gap_after_left_subtree_sum() {
        // left subtree sum over horizon {2,3} is delta_2 = 1/4, so the root
        // gap of length 1/2 sits at (1/4, 3/4)
        let seq = GapSequence::geometric_normalized(std::f64::consts::LN_2).unwrap();
        let s = generated_set(&seq, 1).unwrap();
        assert_eq!(s.gaps().len(), 1);
        let (a, b) = s.gaps()[0];
        assert_abs_diff_eq!(a, 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(b, 0.75, epsilon = 1e-12);
    }

    #[test]
    fn generated_rejects_unnormalized() {
        let seq = GapSequence::explicit(vec![0.5, 0.6]).unwrap();
        assert!(matches!(generated_set(&seq, 2), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn generated_gap_multiset_and_residual() {
        let seq = GapSequence::geometric_normalized(std::f64::consts::LN_2).unwrap();
        for depth in [2u32, 5, 12] {
            let s = generated_set(&seq, depth).unwrap();
            let placed = seq.deltas().len().min((1usize << depth) - 1);
            assert_eq!(s.gaps().len(), placed);
            let mut lens: Vec<f64> = s.gaps().iter().map(|&(a, b)| b - a).collect();
            lens.sort_by(|a, b| b.partial_cmp(a).unwrap());
            for (len, &delta) in lens.iter().zip(seq.deltas()) {
                assert_abs_diff_eq!(*len, delta, epsilon = 1e-12);
            }
            let gap_total: f64 = lens.iter().sum();
            assert_abs_diff_eq!(gap_total + s.residual(), 1.0, epsilon = 1e-12);
        }
    }
}
