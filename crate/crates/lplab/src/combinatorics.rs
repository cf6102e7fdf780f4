//! Splitting certificates, small-shift search and n-chain detection.
//!
//! A finite set splits a gap set when every point lies strictly inside some
//! complementary gap and no gap holds two of them. These certificates, the
//! translation trick that produces them, and chains (sets of the form
//! `a + sum eps_j l_j`) are the combinatorial side of the square-function
//! experiments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval;
use crate::set::{Chain, GapSet};

/// Default comparison tolerance for exact point membership.
pub const POINT_TOLERANCE: f64 = 1e-12;

/// An arithmetic progression `{a + k d, k = 1..n}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct APSpec {
    pub a: f64,
    pub d: f64,
    pub n: usize,
}

impl APSpec {
    pub fn new(a: f64, d: f64, n: usize) -> Result<Self> {
        if d == 0.0 || !d.is_finite() {
            return Err(Error::param("d", "progression step must be nonzero"));
        }
        if n == 0 {
            return Err(Error::param("n", "progression length must be positive"));
        }
        Ok(APSpec { a, d, n })
    }

    pub fn points(&self) -> Vec<f64> {
        (1..=self.n).map(|k| self.a + k as f64 * self.d).collect()
    }
}

/// Why a splitting certificate failed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SplitFailure {
    /// The point lies in the represented set, not in a gap.
    PointInComponent { point: f64 },
    /// Two points share one complementary gap.
    SharedGap { first: f64, second: f64, gap_index: usize },
}

/// Per-point gap assignment for a candidate splitting set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SplittingCertificate {
    pub points: Vec<f64>,
    /// Gap index per point; `None` when the point is not strictly inside a gap.
    pub assignments: Vec<Option<usize>>,
    pub valid: bool,
    pub failure: Option<SplitFailure>,
}

impl SplittingCertificate {
    /// Serializes as `{"valid": bool, "assignments": [[point, gap], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let assignments: Vec<serde_json::Value> = self
            .points
            .iter()
            .zip(&self.assignments)
            .map(|(&p, &g)| {
                serde_json::json!([p, g])
            })
            .collect();
        serde_json::json!({ "valid": self.valid, "assignments": assignments })
    }
}

/// Checks whether `points` splits `set`: assigns each point its gap and stops
/// the validity at the first point inside a component or the first shared gap.
pub fn splits(points: &[f64], set: &GapSet) -> SplittingCertificate {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("non-finite point"));
    let mut assignments = Vec::with_capacity(pts.len());
    let mut failure = None;
    let mut last: Option<(usize, f64)> = None;
    for &p in &pts {
        let gap = set.gap_containing(p);
        assignments.push(gap);
        if failure.is_some() {
            continue;
        }
        match gap {
            None => failure = Some(SplitFailure::PointInComponent { point: p }),
            Some(g) => {
                if let Some((lg, lp)) = last {
                    if lg == g {
                        failure = Some(SplitFailure::SharedGap { first: lp, second: p, gap_index: g });
                    }
                }
                last = Some((g, p));
            }
        }
    }
    SplittingCertificate { points: pts, valid: failure.is_none() && !points.is_empty(), failure, assignments }
}

/// Largest subset of an arithmetic progression that splits the set: one point
/// per gap, ties resolved to the leftmost. Progression points outside every
/// gap (on the set, or outside the window) are skipped.
pub fn max_splitting_subset(set: &GapSet, ap: &APSpec) -> (usize, Vec<f64>) {
    let mut chosen: Vec<(usize, f64)> = Vec::new();
    let mut points = ap.points();
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for &p in &points {
        if let Some(g) = set.gap_containing(p) {
            match chosen.last() {
                Some(&(lg, _)) if lg == g => {} // leftmost already kept
                _ => chosen.push((g, p)),
            }
        }
    }
    // points sorted => gap indices non-decreasing, dedup by gap is complete
    let subset: Vec<f64> = chosen.iter().map(|&(_, p)| p).collect();
    (chosen.len(), subset)
}

/// Finds a small shift `xi` with `(points + xi)` disjoint from every
/// component of `set`, `|xi| < delta`.
///
/// The feasible set `(-delta, delta) minus the translated components` is
/// computed exactly; the result is `0` when already feasible, otherwise the
/// feasible-component midpoint of smallest `|xi|` (positive on ties).
pub fn clearance_shift(points: &[f64], set: &GapSet, delta: f64) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::param("delta", format!("{delta} must be positive")));
    }
    let mut blocked: Vec<(f64, f64)> = Vec::new();
    for &t in points {
        for &(l, r) in set.components() {
            // xi is blocked iff t + xi lands in [l, r]
            let (a, b) = (l - t, r - t);
            if b < -delta || a > delta {
                continue;
            }
            blocked.push((a.max(-delta), b.min(delta)));
        }
    }
    let blocked = interval::merge(blocked);
    let covered: f64 = blocked.iter().map(|&(a, b)| b - a).sum();
    let feasible = interval::complement_within(&blocked, -delta, delta);
    // blocked components are closed, so zero-length leftovers are infeasible
    let feasible: Vec<(f64, f64)> = feasible.into_iter().filter(|&(a, b)| b > a).collect();
    if feasible.is_empty() {
        return Err(Error::ShiftInfeasible { delta, covered });
    }
    if !blocked.iter().any(|&(a, b)| a <= 0.0 && 0.0 <= b) {
        return Ok(0.0);
    }
    let mut best = f64::INFINITY;
    for &(a, b) in &feasible {
        let mid = 0.5 * (a + b);
        if mid.abs() < best.abs() || (mid.abs() == best.abs() && mid > best) {
            best = mid;
        }
    }
    Ok(best)
}

/// Outcome of a chain search.
#[derive(Debug, Clone, PartialEq)]
pub enum ChainSearch {
    Found(Chain),
    /// Exhaustive search proved no chain exists.
    NoneProved,
    /// The greedy heuristic found nothing; absence is not proved.
    NoneHeuristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainSearchMode {
    Exact,
    Heuristic,
}

const EXACT_MAX_N: usize = 3;
const EXACT_MAX_POINTS: usize = 64;

/// Searches `points` for an n-chain with all `2^n` subset sums present
/// (membership up to `tolerance`).
///
/// Exact mode enumerates base/length candidates and is complete for
/// `n <= 3`, `|points| <= 64`; larger instances need the heuristic, which
/// pairs points by the most frequent positive difference and recurses.
pub fn find_chain(points: &[f64], n: usize, mode: ChainSearchMode, tolerance: f64) -> Result<ChainSearch> {
    if n == 0 {
        return Err(Error::param("n", "chain order must be at least 1"));
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("non-finite point"));
    pts.dedup_by(|a, b| (*a - *b).abs() <= tolerance);
    match mode {
        ChainSearchMode::Exact => {
            if n > EXACT_MAX_N || pts.len() > EXACT_MAX_POINTS {
                return Err(Error::ChainSearchTooLarge {
                    n,
                    points: pts.len(),
                    max_n: EXACT_MAX_N,
                    max_points: EXACT_MAX_POINTS,
                });
            }
            Ok(exact_search(&pts, n, tolerance))
        }
        ChainSearchMode::Heuristic => Ok(heuristic_search(&pts, n, tolerance)),
    }
}

fn member(pts: &[f64], x: f64, tol: f64) -> bool {
    let i = pts.partition_point(|&p| p < x - tol);
    i < pts.len() && (pts[i] - x).abs() <= tol
}

fn exact_search(pts: &[f64], n: usize, tol: f64) -> ChainSearch {
    let m = pts.len();
    if m < 1 << n {
        return ChainSearch::NoneProved;
    }
    // choose the base and the n points giving the lengths; all remaining
    // subset sums must be present
    let mut idx = vec![0usize; n];
    for (bi, &base) in pts.iter().enumerate() {
        if try_lengths(pts, bi, base, &mut idx, 0, n, tol) {
            let lengths: Vec<f64> = idx.iter().map(|&i| pts[i] - base).collect();
            if let Ok(chain) = Chain::new(base, lengths, tol) {
                return ChainSearch::Found(chain);
            }
        }
    }
    ChainSearch::NoneProved
}

fn try_lengths(pts: &[f64], base_idx: usize, base: f64, idx: &mut Vec<usize>, depth: usize, n: usize, tol: f64) -> bool {
    if depth == n {
        // verify every subset sum; singles and the base hold by construction
        let lengths: Vec<f64> = idx.iter().map(|&i| pts[i] - base).collect();
        let mut sums = vec![base];
        for &l in &lengths {
            let shifted: Vec<f64> = sums.iter().map(|&s| s + l).collect();
            sums.extend(shifted);
        }
        sums.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if sums.windows(2).any(|w| w[1] - w[0] <= tol) {
            return false;
        }
        return sums.iter().all(|&s| member(pts, s, tol));
    }
    let start = if depth == 0 { base_idx + 1 } else { idx[depth - 1] + 1 };
    for i in start..pts.len() {
        idx[depth] = i;
        if try_lengths(pts, base_idx, base, idx, depth + 1, n, tol) {
            return true;
        }
    }
    false
}

fn heuristic_search(pts: &[f64], n: usize, tol: f64) -> ChainSearch {
    if pts.len() < 1 << n {
        return ChainSearch::NoneHeuristic;
    }
    // rank candidate lengths by how many point pairs realize them
    let mut diffs: Vec<f64> = Vec::new();
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            diffs.push(q - p);
        }
    }
    diffs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut candidates: Vec<(usize, f64)> = Vec::new();
    let mut i = 0;
    while i < diffs.len() {
        let mut j = i;
        while j + 1 < diffs.len() && diffs[j + 1] - diffs[i] <= tol {
            j += 1;
        }
        candidates.push((j - i + 1, diffs[i]));
        i = j + 1;
    }
    candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.partial_cmp(&b.1).unwrap()));
    let needed = 1usize << (n - 1);
    for &(count, l) in candidates.iter().take(32) {
        if count < needed {
            break;
        }
        // keep points whose partner at distance l exists; recurse on the bases
        let bases: Vec<f64> = pts.iter().copied().filter(|&p| member(pts, p + l, tol)).collect();
        if bases.len() < needed {
            continue;
        }
        if n == 1 {
            if let Ok(chain) = Chain::new(bases[0], vec![l], tol) {
                return ChainSearch::Found(chain);
            }
            continue;
        }
        match heuristic_search(&bases, n - 1, tol) {
            ChainSearch::Found(sub) => {
                let mut lengths = sub.lengths().to_vec();
                lengths.push(l);
                if let Ok(chain) = Chain::new(sub.base(), lengths, tol) {
                    // partners of the sub-chain points must all be present
                    if chain.points().iter().all(|&p| member(pts, p, tol)) {
                        return ChainSearch::Found(chain);
                    }
                }
            }
            _ => continue,
        }
    }
    ChainSearch::NoneHeuristic
}

/// The staircase sequence: chains `F_n` of every order up to
/// `n_max` stacked in pairwise disjoint intervals
/// `[alpha_n, beta_n] = [sum of first n^2 lengths, sum of first n^2+n]`.
pub struct ChainStaircase {
    pub points: Vec<f64>,
    pub chains: Vec<Chain>,
    /// `(alpha_n, beta_n)` per chain order.
    pub intervals: Vec<(f64, f64)>,
}

pub fn chain_staircase(lengths: &[f64], n_max: usize) -> Result<ChainStaircase> {
    if n_max == 0 {
        return Err(Error::param("n_max", "need at least chain order one"));
    }
    let needed = n_max * n_max + n_max;
    if lengths.len() < needed {
        return Err(Error::param(
            "lengths",
            format!("need n_max^2 + n_max = {needed} lengths, got {}", lengths.len()),
        ));
    }
    crate::set::check_decay(lengths)?;
    let prefix = |upto: usize| -> f64 { lengths[..upto].iter().rev().sum() };
    let mut chains = Vec::with_capacity(n_max);
    let mut intervals = Vec::with_capacity(n_max);
    let mut points = Vec::new();
    for n in 1..=n_max {
        let alpha = prefix(n * n);
        let beta = prefix(n * n + n);
        let chain = Chain::new(alpha, lengths[n * n..n * n + n].to_vec(), 0.0)?;
        points.extend(chain.points());
        chains.push(chain);
        intervals.push((alpha, beta));
    }
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(ChainStaircase { points, chains, intervals })
}

/// A shift that makes a chain split the set: tries `clearance_shift` with the
/// chain's points under a shrinking radius until the shifted chain is both
/// disjoint from the components and splitting.
pub fn chain_split_shift(chain: &Chain, set: &GapSet, delta0: f64) -> Result<(f64, SplittingCertificate)> {
    if !(delta0 > 0.0) {
        return Err(Error::param("delta0", format!("{delta0} must be positive")));
    }
    let pts = chain.points();
    let floor = 1e-15 * set.window_len().max(1.0);
    let mut delta = delta0;
    let mut last_failure: Option<SplitFailure> = None;
    while delta > floor {
        if let Ok(xi) = clearance_shift(&pts, set, delta) {
            // candidate shifts: every feasible midpoint ordered by |xi| would
            // do; the returned one is the closest, and on success we stop
            let shifted: Vec<f64> = pts.iter().map(|&p| p + xi).collect();
            let cert = splits(&shifted, set);
            if cert.valid {
                return Ok((xi, cert));
            }
            last_failure = cert.failure;
        }
        delta *= 0.5;
    }
    match last_failure {
        Some(SplitFailure::SharedGap { first, second, gap_index }) => {
            Err(Error::SplitShiftExhausted { floor, first, second, gap_index })
        }
        _ => Err(Error::ShiftInfeasible { delta: floor, covered: 2.0 * floor }),
    }
}
