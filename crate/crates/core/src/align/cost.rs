//! Edit operation costs.

use crate::corpus::Sentence;

/// Cost function for the edit distance recurrence.
///
/// The default costs find a longest common subsequence: matches are free,
/// insertion and deletion cost 1, substitution costs 2. The biased variant
/// replaces only the match cost by the relative-offset penalty
/// `|i/|A| - j/|B|| * mean(|A|, |B|)` (0-based indices, arithmetic mean),
/// which penalizes linking words that sit far apart in their sentences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostFunction {
    Default,
    Biased,
}

impl CostFunction {
    pub fn deletion(&self) -> f64 {
        1.0
    }

    pub fn insertion(&self) -> f64 {
        1.0
    }

    /// Cost of the diagonal move pairing `a[i]` with `b[j]` (0-based): the
    /// match cost when the words are equal, otherwise the substitution cost.
    pub fn diagonal(&self, a: &Sentence, b: &Sentence, i: usize, j: usize) -> f64 {
        if a.tokens()[i] != b.tokens()[j] {
            return 2.0;
        }
        match self {
            CostFunction::Default => 0.0,
            CostFunction::Biased => {
                // |i/|A| - j/|B|| * (|A|+|B|)/2, evaluated over integers
                // first so that exactly representable costs stay exact.
                let la = a.len();
                let lb = b.len();
                let diff = (i * lb).abs_diff(j * la);
                (diff * (la + lb)) as f64 / (2 * la * lb) as f64
            }
        }
    }
}
