use ifcs::fairness::gini_double_sum;
use ifcs::{fairness_score, fairness_score_sorted, lower_bound, PartialObservation};
use proptest::collection::vec;
use proptest::prelude::*;

/// Levels drawn from a tiny alphabet so ties are common.
fn tied_levels() -> impl Strategy<Value = Vec<u64>> {
    prop_oneof![vec(1u64..4, 1..40), vec(1u64..1000, 1..40)]
}

fn direct(levels: &[u64]) -> f64 {
    let n = levels.len() as f64;
    let total: u64 = levels.iter().sum();
    gini_double_sum(levels) / (2.0 * n * total as f64)
}

proptest! {
    #[test]
    fn rank_form_equals_pair_sum(levels in tied_levels()) {
        let fs = fairness_score(&levels).unwrap();
        prop_assert!((fs.value() - direct(&levels)).abs() <= 1e-12);
        let mut sorted = levels.clone();
        sorted.sort_unstable();
        prop_assert_eq!(fairness_score_sorted(&sorted).unwrap(), fs);
    }

    #[test]
    fn score_in_unit_interval_zero_iff_equal(levels in tied_levels()) {
        let fs = fairness_score(&levels).unwrap().value();
        prop_assert!((0.0..1.0).contains(&fs));
        let all_equal = levels.iter().all(|&s| s == levels[0]);
        prop_assert_eq!(fs == 0.0, all_equal);
    }

    #[test]
    fn scaling_leaves_score_unchanged(levels in tied_levels(), c in 1u64..50) {
        let scaled: Vec<u64> = levels.iter().map(|&s| s * c).collect();
        prop_assert_eq!(fairness_score(&scaled).unwrap(), fairness_score(&levels).unwrap());
    }

    #[test]
    fn order_does_not_matter(mut levels in tied_levels(), seed in any::<u64>()) {
        let before = fairness_score(&levels).unwrap();
        let n = levels.len();
        levels.rotate_left((seed as usize) % n);
        levels.reverse();
        prop_assert_eq!(fairness_score(&levels).unwrap(), before);
    }

    /// The median minimizes the absolute deviation sum over all integers
    /// in the observed range.
    #[test]
    fn median_minimizes_deviation(levels in vec(1u64..60, 1..15)) {
        let mut sorted = levels.clone();
        sorted.sort_unstable();
        let m = sorted.len();
        // Doubled median, as for even counts it may be a half-integer.
        let med2 = sorted[(m - 1) / 2] + sorted[m / 2];
        let dev2 = |x2: u64| -> u64 { sorted.iter().map(|&s| (2 * s).abs_diff(x2)).sum() };
        let at_median = dev2(med2);
        for x in 1..=60u64 {
            prop_assert!(at_median <= dev2(2 * x));
        }
    }

    /// For any added value at least the observed maximum, the score does
    /// not decrease as that value grows.
    #[test]
    fn adding_large_values_is_monotone(levels in vec(1u64..30, 1..12), extra in 0u64..30) {
        let max = *levels.iter().max().unwrap();
        let with = |x: u64| {
            let mut v = levels.clone();
            v.push(x);
            fairness_score(&v).unwrap()
        };
        prop_assert!(with(max + extra) <= with(max + extra + 1));
    }

    /// The bound never exceeds the score of a random completion.
    #[test]
    fn bound_below_random_completion(
        observed in vec(1u64..20, 1..8),
        extra in vec(1u64..40, 0..8),
    ) {
        let size = observed.len() + extra.len();
        let p = PartialObservation::new(observed.clone(), size).unwrap();
        let mut full = observed;
        full.extend(&extra);
        prop_assert!(lower_bound(&p) <= fairness_score(&full).unwrap());
    }

    /// A bound for a larger candidate size also bounds every smaller
    /// completion.
    #[test]
    fn bound_covers_smaller_communities(
        observed in vec(1u64..20, 1..8),
        extra in vec(1u64..40, 0..5),
        slack in 0usize..5,
    ) {
        let size = observed.len() + extra.len() + slack;
        let p = PartialObservation::new(observed.clone(), size).unwrap();
        let mut full = observed;
        full.extend(&extra);
        prop_assert!(lower_bound(&p) <= fairness_score(&full).unwrap());
    }
}
