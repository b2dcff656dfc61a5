//! Combined scores for sets of hypotheses: the geometric mean of their
//! probabilities, compared as the mean of the logprobs (lower is better).

use std::cmp::Ordering;

use num_bigint::BigUint;

use super::universe::Probability;

/// The score of a non-empty hypothesis set. Comparisons are exact: a fast
/// floating-point path decides clear cases, near-ties fall back to comparing
/// the underlying probability products as integers, so that mathematically
/// equal means compare equal regardless of rounding.
#[derive(Debug, Clone)]
pub struct CombinedScore {
    n: u32,
    mean_neg_log: f64,
    num: BigUint,
    den: BigUint,
}

/// Mean of the hypotheses' `-log P`, as an exactly comparable value.
pub fn combined_score(probs: &[Probability]) -> CombinedScore {
    assert!(!probs.is_empty(), "combined score of an empty set");
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    let mut sum = 0.0;
    for p in probs {
        assert!(p.count > 0, "zero probability in a combined score");
        num *= BigUint::from(p.count);
        den *= BigUint::from(p.total);
        sum += p.neg_log();
    }
    CombinedScore {
        n: probs.len() as u32,
        mean_neg_log: sum / probs.len() as f64,
        num,
        den,
    }
}

impl CombinedScore {
    pub fn cardinality(&self) -> usize {
        self.n as usize
    }

    pub fn mean_neg_log(&self) -> f64 {
        self.mean_neg_log
    }

    /// Order by score alone; `Less` is the better (lower logprob) score.
    pub fn cmp_score(&self, other: &CombinedScore) -> Ordering {
        let delta = self.mean_neg_log - other.mean_neg_log;
        if delta.abs() > 1e-9 {
            return self.mean_neg_log.partial_cmp(&other.mean_neg_log).unwrap();
        }
        // Mean logprob comparison == reverse geometric-mean comparison:
        // (num_a/den_a)^(1/n_a) vs (num_b/den_b)^(1/n_b), cross-powered.
        let lhs = self.num.pow(other.n) * other.den.pow(self.n);
        let rhs = other.num.pow(self.n) * self.den.pow(other.n);
        rhs.cmp(&lhs)
    }

    /// Extended ordering: score first, then prefer the larger set.
    pub fn cmp_with_cardinality(&self, other: &CombinedScore) -> Ordering {
        self.cmp_score(other).then(other.n.cmp(&self.n))
    }
}
