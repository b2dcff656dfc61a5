//! Unlabeled bracketing recall, precision and F-score.

use crate::error::{Error, Result};
use crate::treebank::{Tree, Treebank};

#[derive(Debug, Clone, Copy)]
pub struct ScoreOptions {
    /// Drop constituents spanning the whole sentence before matching.
    pub exclude_root: bool,
    /// Drop single-word constituents before matching.
    pub exclude_single: bool,
    pub beta: f64,
}

impl Default for ScoreOptions {
    fn default() -> Self {
        ScoreOptions {
            exclude_root: false,
            exclude_single: false,
            beta: 1.0,
        }
    }
}

/// Corpus-level bracket counts. Recall, precision and F are ratios in
/// [0, 1]; the percent accessors scale by 100 for reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketScore {
    pub matched: u64,
    pub gold: u64,
    pub learned: u64,
    pub beta: f64,
    /// True when the learned treebank had no constituents to score, in
    /// which case precision is reported as 0.
    pub undefined_precision: bool,
}

impl BracketScore {
    pub fn recall(&self) -> f64 {
        if self.gold == 0 {
            0.0
        } else {
            self.matched as f64 / self.gold as f64
        }
    }

    pub fn precision(&self) -> f64 {
        if self.learned == 0 {
            0.0
        } else {
            self.matched as f64 / self.learned as f64
        }
    }

    pub fn f_score(&self) -> f64 {
        f_beta(self.recall(), self.precision(), self.beta)
    }

    pub fn recall_percent(&self) -> f64 {
        100.0 * self.recall()
    }

    pub fn precision_percent(&self) -> f64 {
        100.0 * self.precision()
    }

    pub fn f_score_percent(&self) -> f64 {
        100.0 * self.f_score()
    }
}

/// `F_β = (β² + 1)·P·R / (β²·P + R)`; 0 when the denominator vanishes.
/// The formula is scale-equivariant, so it accepts ratios or percentages.
pub fn f_beta(recall: f64, precision: f64, beta: f64) -> f64 {
    let b2 = beta * beta;
    let den = b2 * precision + recall;
    if den == 0.0 {
        0.0
    } else {
        (b2 + 1.0) * precision * recall / den
    }
}

fn spans_for_matching(tree: &Tree, opts: &ScoreOptions) -> Vec<(usize, usize)> {
    let n = tree.sentence().len();
    tree.constituents()
        .iter()
        .map(|c| c.span())
        .filter(|&(b, e)| {
            !(opts.exclude_root && b == 0 && e == n) && !(opts.exclude_single && e - b == 1)
        })
        .collect()
}

/// Micro-averaged unlabeled comparison: per sentence, the matched count is
/// the multiset intersection of the two span sets; counts are summed over
/// the corpus before dividing. Trees are paired by index and must agree on
/// their yields.
pub fn score_treebank(gold: &Treebank, learned: &Treebank, opts: &ScoreOptions) -> Result<BracketScore> {
    if gold.len() != learned.len() {
        return Err(Error::TreebankSizeMismatch {
            gold: gold.len(),
            learned: learned.len(),
        });
    }
    let mut score = BracketScore {
        matched: 0,
        gold: 0,
        learned: 0,
        beta: opts.beta,
        undefined_precision: false,
    };
    for (index, (g, l)) in gold.trees().iter().zip(learned.trees()).enumerate() {
        if g.sentence() != l.sentence() {
            return Err(Error::YieldMismatch { index });
        }
        let gold_spans = spans_for_matching(g, opts);
        let learned_spans = spans_for_matching(l, opts);
        let mut counts: std::collections::HashMap<(usize, usize), i64> =
            std::collections::HashMap::new();
        for s in &gold_spans {
            *counts.entry(*s).or_insert(0) += 1;
        }
        for s in &learned_spans {
            let c = counts.entry(*s).or_insert(0);
            if *c > 0 {
                score.matched += 1;
            }
            *c -= 1;
        }
        score.gold += gold_spans.len() as u64;
        score.learned += learned_spans.len() as u64;
    }
    score.undefined_precision = score.learned == 0;
    Ok(score)
}

/// Mean and the unbiased (n−1) standard deviation of a sample.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (values.len() - 1) as f64;
    (mean, var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::parse_treebank;

    #[test]
    fn identity_scores_perfectly() {
        let bank = parse_treebank("(S (NP a) (VP b c))\n(1 x (2 y))\n").unwrap();
        let s = score_treebank(&bank, &bank, &ScoreOptions::default()).unwrap();
        assert_eq!(s.recall_percent(), 100.0);
        assert_eq!(s.precision_percent(), 100.0);
        assert_eq!(s.f_score_percent(), 100.0);
    }

    #[test]
    fn reported_f_score_arithmetic() {
        // The published reference point: R=25.82, P=54.73 gives F=35.09.
        let f = f_beta(25.82, 54.73, 1.0);
        assert!((f - 35.09).abs() < 0.01, "{f}");
    }

    #[test]
    fn hand_counted_span_intersection() {
        let gold = parse_treebank("(S (NP a) (VP b c))\n").unwrap();
        let learned = parse_treebank("(1 (2 a) b c)\n").unwrap();
        // gold spans {⟨0,3⟩⟨0,1⟩⟨1,3⟩}, learned {⟨0,3⟩⟨0,1⟩}
        let s = score_treebank(&gold, &learned, &ScoreOptions::default()).unwrap();
        assert_eq!((s.matched, s.gold, s.learned), (2, 3, 2));
        assert!((s.recall() - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(s.precision(), 1.0);
    }

    #[test]
    fn yield_mismatch_names_the_sentence() {
        let gold = parse_treebank("(S a b)\n(S c)\n").unwrap();
        let learned = parse_treebank("(S a b)\n(S d)\n").unwrap();
        let err = score_treebank(&gold, &learned, &ScoreOptions::default()).unwrap_err();
        assert!(matches!(err, Error::YieldMismatch { index: 1 }));
    }

    #[test]
    fn exclusion_flags() {
        let gold = parse_treebank("(S (NP a) (VP b c))\n").unwrap();
        let opts = ScoreOptions {
            exclude_root: true,
            exclude_single: true,
            ..Default::default()
        };
        let s = score_treebank(&gold, &gold, &opts).unwrap();
        // Only ⟨1,3⟩ survives the exclusions.
        assert_eq!((s.matched, s.gold, s.learned), (1, 1, 1));
    }

    #[test]
    fn duplicate_spans_match_as_a_multiset() {
        let gold = parse_treebank("(TOP (S a b))\n").unwrap();
        let learned = parse_treebank("(X (Y (Z a b)))\n").unwrap();
        // gold has ⟨0,2⟩ twice, learned three times: 2 matches.
        let s = score_treebank(&gold, &learned, &ScoreOptions::default()).unwrap();
        assert_eq!((s.matched, s.gold, s.learned), (2, 2, 3));
    }

    #[test]
    fn empty_learned_side_flags_undefined_precision() {
        let gold = parse_treebank("(S a b)\n").unwrap();
        let learned = parse_treebank("(S a b)\n").unwrap();
        let opts = ScoreOptions {
            exclude_root: true,
            ..Default::default()
        };
        let s = score_treebank(&gold, &learned, &opts).unwrap();
        assert!(s.undefined_precision);
        assert_eq!(s.precision(), 0.0);
    }

    #[test]
    fn f_is_between_recall_and_precision() {
        let s = BracketScore {
            matched: 3,
            gold: 6,
            learned: 4,
            beta: 1.0,
            undefined_precision: false,
        };
        let (r, p, f) = (s.recall(), s.precision(), s.f_score());
        assert!(f >= r.min(p) && f <= r.max(p));
        // And F == R when R == P.
        assert!((f_beta(0.4, 0.4, 1.0) - 0.4).abs() < 1e-12);
    }

    #[test]
    fn unbiased_standard_deviation() {
        let (mean, std) = mean_std(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]);
        assert!((mean - 5.0).abs() < 1e-12);
        assert!((std - (32.0f64 / 7.0).sqrt()).abs() < 1e-12);
    }
}
