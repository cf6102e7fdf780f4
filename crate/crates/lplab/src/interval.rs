//! Small helpers for finite unions of intervals on the line.
//!
//! Intervals are `(left, right)` pairs with `left <= right`; degenerate
//! (zero-length) intervals are allowed and carry no measure. Open/closed
//! distinctions never matter for the Lebesgue measure of a finite union,
//! so the helpers here work on endpoint pairs only.

/// Merges a list of intervals in place and returns the sorted disjoint union.
///
/// Touching intervals (`b == a'`) are coalesced. Degenerate members are kept
/// only when isolated.
pub fn merge(mut intervals: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    intervals.retain(|&(l, r)| r >= l);
    intervals.sort_by(|a, b| a.partial_cmp(b).expect("non-finite interval endpoint"));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
    for (l, r) in intervals {
        match out.last_mut() {
            Some(last) if l <= last.1 => last.1 = last.1.max(r),
            _ => out.push((l, r)),
        }
    }
    out
}

/// Total length of a union of intervals (overlaps counted once).
pub fn measure(intervals: Vec<(f64, f64)>) -> f64 {
    merge(intervals).iter().map(|&(l, r)| r - l).sum()
}

/// Intersects `(l, r)` with `(lo, hi)`; `None` when they do not meet.
pub fn clip(l: f64, r: f64, lo: f64, hi: f64) -> Option<(f64, f64)> {
    let a = l.max(lo);
    let b = r.min(hi);
    (b >= a).then_some((a, b))
}

/// Length of the overlap of two intervals (zero when disjoint).
pub fn overlap(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.1.min(b.1) - a.0.max(b.0)).max(0.0)
}

/// Complement of a sorted disjoint union within `(lo, hi)`, as closed-ish
/// endpoint pairs. The input must already be merged.
pub fn complement_within(cover: &[(f64, f64)], lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut cursor = lo;
    for &(l, r) in cover {
        if r < lo {
            continue;
        }
        if l > hi {
            break;
        }
        if l > cursor {
            out.push((cursor, l.min(hi)));
        }
        cursor = cursor.max(r);
    }
    if cursor < hi {
        out.push((cursor, hi));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_coalesces_touching() {
        let m = merge(vec![(0.0, 1.0), (1.0, 2.0), (3.0, 4.0)]);
        assert_eq!(m, vec![(0.0, 2.0), (3.0, 4.0)]);
    }

    #[test]
    fn measure_counts_overlap_once() {
        assert_eq!(measure(vec![(0.0, 2.0), (1.0, 3.0)]), 3.0);
    }

    #[test]
    fn complement_basic() {
        let cover = vec![(0.2, 0.4), (0.6, 0.8)];
        let c = complement_within(&cover, 0.0, 1.0);
        assert_eq!(c, vec![(0.0, 0.2), (0.4, 0.6), (0.8, 1.0)]);
    }

    #[test]
    fn complement_cover_past_edges() {
        let cover = vec![(-1.0, 0.5)];
        let c = complement_within(&cover, 0.0, 1.0);
        assert_eq!(c, vec![(0.5, 1.0)]);
    }
}
