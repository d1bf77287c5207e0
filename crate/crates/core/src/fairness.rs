//! Gini-based fairness scores over member active levels.
//!
//! Scores are kept as exact fractions of integers so that ties between
//! communities are detected exactly; [`FairnessScore::value`] gives the
//! double-precision view used for reporting.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FairnessError {
    #[error("fairness score of an empty community is undefined")]
    Empty,
    #[error("active level at position {0} is not positive")]
    NonPositive(usize),
    #[error("active levels are not sorted at position {0}")]
    Unsorted(usize),
    #[error("observation of {observed} levels exceeds candidate size {candidate_size}")]
    Oversized {
        observed: usize,
        candidate_size: usize,
    },
}

/// Active level (number of motif instances around the vertex) of each
/// community member.
pub type ActiveLevels = BTreeMap<VertexId, u64>;

/// A fairness score `numerator / denominator`, in `[0, 1)`.
#[derive(Clone, Copy, Debug)]
pub struct FairnessScore {
    num: u128,
    den: u128,
}

impl FairnessScore {
    pub const ZERO: FairnessScore = FairnessScore { num: 0, den: 1 };

    fn new(num: u128, den: u128) -> Self {
        debug_assert!(den > 0);
        if num == 0 {
            return Self::ZERO;
        }
        let g = gcd(num, den);
        FairnessScore {
            num: num / g,
            den: den / g,
        }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    pub fn denominator(&self) -> u128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }
}

impl PartialEq for FairnessScore {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for FairnessScore {}

impl PartialOrd for FairnessScore {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FairnessScore {
    fn cmp(&self, other: &Self) -> Ordering {
        match (
            self.num.checked_mul(other.den),
            other.num.checked_mul(self.den),
        ) {
            (Some(a), Some(b)) => a.cmp(&b),
            // Only reachable for astronomically large communities.
            _ => self.value().total_cmp(&other.value()),
        }
    }
}

impl fmt::Display for FairnessScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn validate(levels: &[u64]) -> Result<(), FairnessError> {
    if levels.is_empty() {
        return Err(FairnessError::Empty);
    }
    match levels.iter().position(|&s| s == 0) {
        Some(i) => Err(FairnessError::NonPositive(i)),
        None => Ok(()),
    }
}

/// `sum_i (2i - n - 1) * s_i` over a non-decreasing list (1-based `i`),
/// which is half of the ordered-pair absolute-difference sum.
fn half_pair_sum_sorted(sorted: &[u64]) -> u128 {
    let n = sorted.len() as i128;
    let mut acc: i128 = 0;
    for (i, &s) in sorted.iter().enumerate() {
        acc += (2 * (i as i128 + 1) - n - 1) * s as i128;
    }
    debug_assert!(acc >= 0);
    acc as u128
}

/// Gini fairness score of a multiset of active levels.
pub fn fairness_score(levels: &[u64]) -> Result<FairnessScore, FairnessError> {
    validate(levels)?;
    let mut sorted = levels.to_vec();
    sorted.sort_unstable();
    fairness_score_sorted(&sorted)
}

/// Fairness score of a non-decreasing list via the rank-weighted form
/// `sum (2i-1) s_i / (n * sum s) - 1`. Ties are allowed.
pub fn fairness_score_sorted(levels: &[u64]) -> Result<FairnessScore, FairnessError> {
    validate(levels)?;
    if let Some(i) = levels.windows(2).position(|w| w[0] > w[1]) {
        return Err(FairnessError::Unsorted(i + 1));
    }
    let n = levels.len() as u128;
    let total: u128 = levels.iter().map(|&s| s as u128).sum();
    let weighted: u128 = levels
        .iter()
        .enumerate()
        .map(|(i, &s)| (2 * i as u128 + 1) * s as u128)
        .sum();
    // weighted - n * total == sum (2i - 1 - n) s_i >= 0
    Ok(FairnessScore::new(weighted - n * total, n * total))
}

/// Sum of `|s_i - s_j|` over all ordered pairs, by direct double loop.
pub fn gini_double_sum(levels: &[u64]) -> f64 {
    let mut acc: u128 = 0;
    for &a in levels {
        for &b in levels {
            acc += a.abs_diff(b) as u128;
        }
    }
    acc as f64
}

/// Active levels of the already-visited members of a candidate community,
/// together with the candidate community's size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialObservation {
    observed: Vec<u64>,
    candidate_size: usize,
}

impl PartialObservation {
    pub fn new(observed: Vec<u64>, candidate_size: usize) -> Result<Self, FairnessError> {
        validate(&observed)?;
        if observed.len() > candidate_size {
            return Err(FairnessError::Oversized {
                observed: observed.len(),
                candidate_size,
            });
        }
        Ok(Self {
            observed,
            candidate_size,
        })
    }

    pub fn observed(&self) -> &[u64] {
        &self.observed
    }

    pub fn candidate_size(&self) -> usize {
        self.candidate_size
    }
}

/// Lower bound on the fairness score of any community that contains the
/// observed members and at most `candidate_size` members in total.
///
/// The numerator fills every unobserved slot with the median of the observed
/// levels (which minimizes the pair-difference sum); the denominator fills
/// them with the observed maximum. For an even number of observations the
/// median is the mean of the two middle values.
pub fn lower_bound(p: &PartialObservation) -> FairnessScore {
    let mut sorted = p.observed.clone();
    sorted.sort_unstable();
    let m = sorted.len();
    let missing = (p.candidate_size - m) as u128;
    let doubled_median = if m % 2 == 1 {
        2 * sorted[m / 2] as u128
    } else {
        sorted[m / 2 - 1] as u128 + sorted[m / 2] as u128
    };
    let spread: u128 = sorted
        .iter()
        .map(|&s| (2 * s as u128).abs_diff(doubled_median))
        .sum();
    let total: u128 = sorted.iter().map(|&s| s as u128).sum();
    let max = *sorted.last().expect("validated non-empty") as u128;
    // Both terms are doubled so the median stays integral:
    // pair sum over observed (= 2 * half) plus 2 * missing * sum |s - median|.
    let num2 = 4 * half_pair_sum_sorted(&sorted) + 2 * missing * spread;
    let den2 = 4 * p.candidate_size as u128 * (total + missing * max);
    FairnessScore::new(num2, den2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12
    }

    #[test]
    fn unfair_group_scores_point_four() {
        let fs = fairness_score(&[12, 2, 2, 2, 2]).unwrap();
        assert!(close(fs.value(), 0.4));
    }

    #[test]
    fn equal_group_scores_zero() {
        assert!(fairness_score(&[2, 2, 2]).unwrap().is_zero());
        assert!(fairness_score(&[1]).unwrap().is_zero());
        assert!(fairness_score_sorted(&[5, 5]).unwrap().is_zero());
    }

    #[test]
    fn two_members_one_and_three() {
        // |1-3| twice = 4, over 2 * 2 * 4
        assert!(close(fairness_score(&[1, 3]).unwrap().value(), 0.25));
    }

    #[test]
    fn sorted_form_matches() {
        // (2 + 6 + 10 + 14 + 108) / (5 * 20) - 1
        let fs = fairness_score_sorted(&[2, 2, 2, 2, 12]).unwrap();
        assert!(close(fs.value(), 0.4));
    }

    #[test]
    fn error_cases() {
        assert_eq!(fairness_score(&[]), Err(FairnessError::Empty));
        assert_eq!(fairness_score(&[3, 0]), Err(FairnessError::NonPositive(1)));
        assert_eq!(
            fairness_score_sorted(&[1, 3, 2]),
            Err(FairnessError::Unsorted(2))
        );
        assert!(PartialObservation::new(vec![1, 2, 3], 2).is_err());
        assert!(PartialObservation::new(vec![], 2).is_err());
    }

    #[test]
    fn double_sum_examples() {
        assert_eq!(gini_double_sum(&[12, 2, 2, 2, 2]), 80.0);
        assert_eq!(gini_double_sum(&[7, 7, 7, 7]), 0.0);
    }

    #[test]
    fn lower_bound_examples() {
        // median 7 -> [2, 7, 7, 7, 12]: numerator 80, denominator 2*5*(14+3*12)
        let lb = lower_bound(&PartialObservation::new(vec![12, 2], 5).unwrap());
        assert!(close(lb.value(), 0.16));
        let full = lower_bound(&PartialObservation::new(vec![2, 2, 2], 3).unwrap());
        assert!(full.is_zero());
        let single = lower_bound(&PartialObservation::new(vec![5], 4).unwrap());
        assert!(single.is_zero());
    }

    #[test]
    fn complete_observation_matches_score() {
        let levels = vec![3, 1, 4, 1, 5, 9, 2, 6];
        let lb = lower_bound(&PartialObservation::new(levels.clone(), levels.len()).unwrap());
        assert_eq!(lb, fairness_score(&levels).unwrap());
    }

    #[test]
    fn exact_ties_compare_equal() {
        let a = fairness_score(&[1, 2]).unwrap();
        let b = fairness_score(&[2, 4]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.value(), b.value());
        assert!(fairness_score(&[1, 3]).unwrap() > a);
    }
}
