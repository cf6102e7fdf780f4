//! Finite, exact representations of closed sets on the line.
//!
//! A set is stored through its complement: a window `[x0, x1]` together with
//! the sorted open gaps removed from it. What remains — the components — is
//! the represented closed set. Truncated constructions over-approximate the
//! ideal set they stand for; `residual` (total component length) quantifies
//! how much mass the truncation has not yet carved out.

mod chain;
mod construct;
mod psi;
mod sequence;
mod thin_chain;

pub use chain::Chain;
pub(crate) use construct::check_decay;
pub use construct::{cantor_triadic, dyadic_set, sum_set, generated_set, MAX_DEPTH, MAX_SUM_LENGTHS};
pub use psi::PsiSpec;
pub use sequence::{GapFamily, GapSequence};
pub use thin_chain::{thin_chain_set, ChainLevel, ThinChainSet};

use crate::error::{Error, Result};

/// A closed subset of a window, given by the open gaps of its complement.
#[derive(Debug, Clone, PartialEq)]
pub struct GapSet {
    window: (f64, f64),
    gaps: Vec<(f64, f64)>,
    depth: u32,
    residual: f64,
    components: Vec<(f64, f64)>,
}

impl GapSet {
    /// Builds a validated gap set. Gaps may touch each other and the window
    /// edges but must be disjoint, non-empty and contained in the window.
    pub fn from_gaps(window: (f64, f64), mut gaps: Vec<(f64, f64)>) -> Result<Self> {
        let (x0, x1) = window;
        if !x0.is_finite() || !x1.is_finite() || x1 <= x0 {
            return Err(Error::param("window", format!("[{x0}, {x1}] is not a nondegenerate interval")));
        }
        gaps.sort_by(|a, b| a.partial_cmp(b).expect("non-finite gap endpoint"));
        let mut prev_end = f64::NEG_INFINITY;
        for (idx, &(a, b)) in gaps.iter().enumerate() {
            if b <= a {
                return Err(Error::EmptyGap { a, b });
            }
            if a < x0 || b > x1 {
                return Err(Error::GapOutsideWindow { a, b, x0, x1 });
            }
            if a < prev_end {
                return Err(Error::OverlappingGaps { index: idx, a, b });
            }
            prev_end = b;
        }
        let removed: f64 = gaps.iter().map(|&(a, b)| b - a).sum();
        let residual = (x1 - x0) - removed;
        if residual < -1e-12 * (x1 - x0).max(1.0) {
            return Err(Error::param("gaps", format!("total gap length {removed} exceeds the window length {}", x1 - x0)));
        }
        let components = compute_components(window, &gaps);
        Ok(GapSet { window, gaps, depth: 0, residual: residual.max(0.0), components })
    }

    /// Same as [`GapSet::from_gaps`] with a construction depth recorded.
    pub fn with_depth(window: (f64, f64), gaps: Vec<(f64, f64)>, depth: u32) -> Result<Self> {
        let mut set = Self::from_gaps(window, gaps)?;
        set.depth = depth;
        Ok(set)
    }

    /// Builds the set `{p_1, ..., p_n}` of isolated points: every component is
    /// degenerate and the window spans the extremes. Consecutive duplicates
    /// (exact f64 equality) are collapsed.
    pub fn from_points(points: &[f64]) -> Result<Self> {
        let mut pts: Vec<f64> = points.to_vec();
        pts.sort_by(|a, b| a.partial_cmp(b).expect("non-finite point"));
        pts.dedup();
        match pts.len() {
            0 => Err(Error::param("points", "need at least one point")),
            1 => Ok(Self::singleton(pts[0])),
            _ => {
                let gaps = pts.windows(2).map(|w| (w[0], w[1])).collect();
                Self::from_gaps((pts[0], pts[pts.len() - 1]), gaps)
            }
        }
    }

    /// The one-point set `{x}` on the degenerate window `[x, x]`.
    pub fn singleton(x: f64) -> Self {
        GapSet {
            window: (x, x),
            gaps: Vec::new(),
            depth: 0,
            residual: 0.0,
            components: vec![(x, x)],
        }
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn window_len(&self) -> f64 {
        self.window.1 - self.window.0
    }

    /// Sorted open gaps (complementary intervals inside the window).
    pub fn gaps(&self) -> &[(f64, f64)] {
        &self.gaps
    }

    /// Maximal closed intervals left after removing the gaps; degenerate
    /// point components are kept. Always `gaps().len() + 1` entries.
    pub fn components(&self) -> &[(f64, f64)] {
        &self.components
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Total component length `|window| - sum of gap lengths`.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Index of the gap strictly containing `x`, if any.
    pub fn gap_containing(&self, x: f64) -> Option<usize> {
        let idx = self.gaps.partition_point(|&(a, _)| a < x);
        // candidate gaps: idx-1 (a < x) and idx (a == x is not strict containment)
        if idx > 0 {
            let (a, b) = self.gaps[idx - 1];
            if a < x && x < b {
                return Some(idx - 1);
            }
        }
        None
    }

    /// Whether `x` belongs to some component (equivalently, to the represented set).
    pub fn contains(&self, x: f64) -> bool {
        let (x0, x1) = self.window;
        x >= x0 && x <= x1 && self.gap_containing(x).is_none()
    }

    /// Largest component length; zero when every component is a point.
    pub fn max_component_len(&self) -> f64 {
        self.components.iter().map(|&(l, r)| r - l).fold(0.0, f64::max)
    }

    /// Smallest positive component length, if any component has one.
    pub fn min_positive_component_len(&self) -> Option<f64> {
        self.components
            .iter()
            .map(|&(l, r)| r - l)
            .filter(|&len| len > 0.0)
            .fold(None, |acc, len| Some(acc.map_or(len, |a: f64| a.min(len))))
    }

    /// Scale below which the representation no longer resolves the ideal set:
    /// three times the largest component, or zero for exact sets.
    ///
    /// Point sets (residual zero) and gap-free windows (nothing carved, the
    /// solid interval is the represented set) are exact; everything else is a
    /// truncation whose fat components hide deeper structure. Measurements at
    /// `delta` below this floor reflect the truncation, not the set.
    pub fn reliable_floor(&self) -> f64 {
        if !self.gaps.is_empty() && self.residual > 1e-12 * self.window_len().max(1.0) {
            3.0 * self.max_component_len()
        } else {
            0.0
        }
    }
}

fn compute_components(window: (f64, f64), gaps: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut components = Vec::with_capacity(gaps.len() + 1);
    let mut cursor = window.0;
    for &(a, b) in gaps {
        components.push((cursor, a));
        cursor = b;
    }
    components.push((cursor, window.1));
    components
}
