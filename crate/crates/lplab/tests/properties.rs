//! Property tests for the structural invariants.

use lplab::combinatorics::{find_chain, chain_staircase, max_splitting_subset, splits, APSpec, ChainSearch, ChainSearchMode, POINT_TOLERANCE};
use lplab::probe::{khintchine_ratio, SignMode, TrigPolynomial};
use lplab::set::{cantor_triadic, sum_set, GapSet};
use lplab::thickness::{neighborhood_measure, portion_neighborhood};

use proptest::prelude::*;
use rustfft::num_complex::Complex64;

/// Random disjoint gaps inside [0, 1]: sorted cut points paired up.
fn gaps_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec(0.0001f64..0.9999, 0..12).prop_map(|mut cuts| {
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        cuts.chunks_exact(2).map(|c| (c[0], c[1])).collect()
    })
}

proptest! {
    #[test]
    fn gap_set_invariants(gaps in gaps_strategy()) {
        let set = GapSet::from_gaps((0.0, 1.0), gaps.clone()).unwrap();
        // sorted and disjoint
        prop_assert!(set.gaps().windows(2).all(|w| w[0].1 <= w[1].0));
        // component count, residual bookkeeping
        prop_assert_eq!(set.components().len(), set.gaps().len() + 1);
        let total: f64 = set.gaps().iter().map(|g| g.1 - g.0).sum();
        prop_assert!((set.residual() + total - 1.0).abs() < 1e-12);
        let comp_total: f64 = set.components().iter().map(|c| c.1 - c.0).sum();
        prop_assert!((comp_total - set.residual()).abs() < 1e-12);
    }

    #[test]
    fn neighborhood_monotone_and_bounded(gaps in gaps_strategy(), exps in prop::collection::vec(1u32..14, 2..6)) {
        let set = GapSet::from_gaps((0.0, 1.0), gaps).unwrap();
        let mut deltas: Vec<f64> = exps.iter().map(|&e| 2f64.powi(-(e as i32))).collect();
        deltas.sort_by(|a, b| a.partial_cmp(b).unwrap());
        deltas.dedup();
        let mut prev = 0.0;
        for &d in &deltas {
            let m = neighborhood_measure(&set, d).unwrap();
            prop_assert!(m > prev);
            prop_assert!(m >= 2.0 * d - 1e-15);
            prop_assert!(m <= 1.0 + 2.0 * d + 1e-15);
            prev = m;
        }
    }

    #[test]
    fn portion_never_exceeds_whole(gaps in gaps_strategy(), lo in 0.0f64..0.8, len in 0.05f64..0.5, e in 2u32..10) {
        let set = GapSet::from_gaps((0.0, 1.0), gaps).unwrap();
        let d = 2f64.powi(-(e as i32));
        let part = portion_neighborhood(&set, (lo, lo + len), d).unwrap().measure;
        let whole = neighborhood_measure(&set, d).unwrap();
        prop_assert!(part <= whole + 1e-12);
    }

    #[test]
    fn sum_set_cardinality_and_order(k in 1usize..9, ratio in 0.05f64..0.49, scale in 0.5f64..2.0) {
        let lengths: Vec<f64> = (0..k).map(|i| scale * ratio.powi(i as i32)).collect();
        let set = sum_set(&lengths).unwrap();
        prop_assert_eq!(set.components().len(), 1 << k);
        let pts: Vec<f64> = set.components().iter().map(|c| c.0).collect();
        prop_assert!(pts.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn splitting_subsets_are_valid(depth in 1u32..7, a in 0.0f64..0.3, d in 0.01f64..0.2, n in 1usize..40) {
        let set = cantor_triadic(depth).unwrap();
        let ap = APSpec::new(a, d, n).unwrap();
        let (nu, subset) = max_splitting_subset(&set, &ap);
        prop_assert!(nu <= n.min(set.gaps().len()));
        prop_assert_eq!(nu, subset.len());
        if nu > 0 {
            let cert = splits(&subset, &set);
            prop_assert!(cert.valid);
        }
    }

    #[test]
    fn khintchine_permutation_and_sign_invariance(
        coeffs in prop::collection::vec(0.05f64..4.0, 2..9),
        p in 1.0f64..1.99,
        shuffle_seed in 0u64..1000,
    ) {
        let base = khintchine_ratio(&coeffs, p, SignMode::Exhaustive, 0, 0).unwrap();
        // deterministic pseudo-shuffle: rotate and flip one sign
        let rot = (shuffle_seed as usize) % coeffs.len();
        let mut permuted: Vec<f64> = coeffs[rot..].iter().chain(&coeffs[..rot]).copied().collect();
        permuted[0] = -permuted[0];
        let other = khintchine_ratio(&permuted, p, SignMode::Exhaustive, 0, 0).unwrap();
        prop_assert!((base - other).abs() < 1e-12);
        prop_assert!(base > 0.0 && base <= 1.0 + 1e-12);
    }

    #[test]
    fn lp_norm_monotone_in_p(freqs in prop::collection::btree_set(-20i64..20, 1..5), re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let terms: Vec<(i64, Complex64)> = freqs.iter().map(|&k| (k, Complex64::new(re, im + k as f64 * 0.1))).collect();
        let poly = TrigPolynomial::new(terms).unwrap();
        let m = 256;
        let mut prev = 0.0;
        for p in [1.0, 1.5, 2.0, 3.0] {
            let n = poly.lp_norm(p, m).unwrap();
            prop_assert!(n >= prev - 1e-10);
            prev = n;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn staircase_chains_verify_by_search(ratio in 0.2f64..0.49, n_max in 1usize..4) {
        // ratio floor keeps the deepest chain spacing (ratio^12) well above
        // the search tolerance, so exact search can resolve the points
        let needed = n_max * n_max + n_max;
        let lengths: Vec<f64> = (0..needed).map(|i| ratio.powi(i as i32 + 1)).collect();
        let seq = chain_staircase(&lengths, n_max).unwrap();
        for chain in &seq.chains {
            // construction certificate: points are in S
            for p in chain.points() {
                prop_assert!(seq.points.iter().any(|&q| (q - p).abs() <= 1e-12));
            }
            // and exact search over the chain's own points finds one
            if chain.order() <= 3 {
                let found = find_chain(&chain.points(), chain.order(), ChainSearchMode::Exact, POINT_TOLERANCE).unwrap();
                prop_assert!(matches!(found, ChainSearch::Found(_)));
            }
        }
    }
}
