//! Fairness scores of a few activity profiles, and the lower bound used to
//! prune a partially explored community.

use ifcs::{fairness_score, lower_bound, PartialObservation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let profiles: [&[u64]; 4] = [&[12, 12, 12], &[1, 3], &[2, 2, 2, 10], &[1, 1, 1, 1, 50]];
    for levels in profiles {
        let fs = fairness_score(levels)?;
        println!(
            "{levels:?}: {:.4} ({}/{})",
            fs.value(),
            fs.numerator(),
            fs.denominator()
        );
    }

    // Two members seen so far, community may grow to five.
    let seen = PartialObservation::new(vec![3, 9], 5)?;
    let lb = lower_bound(&seen);
    println!(
        "bound for {:?} within 5 members: {:.4}",
        seen.observed(),
        lb.value()
    );
    for rest in [[6, 6, 6], [3, 9, 9], [9, 9, 9]] {
        let mut full = seen.observed().to_vec();
        full.extend(rest);
        println!(
            "  completion {full:?}: {:.4}",
            fairness_score(&full)?.value()
        );
    }
    Ok(())
}
