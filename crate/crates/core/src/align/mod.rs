//! Alignment learning: turn a corpus into a hypothesis space by aligning
//! every sentence pair and storing the unequal parts as hypothesis pairs.

mod all;
mod cost;
mod edit;
mod subst;

pub use all::{all_alignments, all_alignments_capped};
pub use cost::CostFunction;
pub use edit::{edit_matrix, traceback_links, EditMatrix};
pub use subst::{clusters_from_links, complement_spans, substitutable_pairs, Span, SpanPair, WordCluster};

use rayon::prelude::*;

use crate::corpus::{Corpus, Sentence};
use crate::space::HypothesisSpace;

/// A matched word pair: 0-based indices into the two sentences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Link {
    pub a: usize,
    pub b: usize,
}

/// How substitutable subsentences are found for a sentence pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlignmentInstance {
    /// Edit distance with the longest-common-subsequence costs.
    Default,
    /// Edit distance with match costs biased towards similar word offsets.
    Biased,
    /// Every maximal alignment contributes pairs.
    All,
}

impl AlignmentInstance {
    pub fn name(&self) -> &'static str {
        match self {
            AlignmentInstance::Default => "default",
            AlignmentInstance::Biased => "biased",
            AlignmentInstance::All => "all",
        }
    }
}

impl std::str::FromStr for AlignmentInstance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "default" => Ok(AlignmentInstance::Default),
            "biased" => Ok(AlignmentInstance::Biased),
            "all" => Ok(AlignmentInstance::All),
            other => Err(format!("unknown alignment instance {other:?}")),
        }
    }
}

/// Sentence pairs whose full alignment enumeration is abandoned once this
/// many alignments are in flight. Ordinary sentence pairs yield a handful;
/// only heavy word repetition in both sentences approaches the cap.
pub const ALL_ALIGNMENTS_CAP: usize = 4096;

/// Sentence pairs that overflowed the enumeration cap and fell back to the
/// single edit-distance alignment.
#[derive(Debug, Clone, Default)]
pub struct AlignReport {
    pub capped_pairs: usize,
}

fn edit_distance_pairs(a: &Sentence, b: &Sentence, cost: CostFunction) -> Vec<SpanPair> {
    let m = edit_matrix(a, b, &cost);
    let links = traceback_links(a, b, &m, &cost);
    substitutable_pairs(a, b, &links)
}

/// The substitutable pairs for one sentence pair under the chosen instance,
/// plus whether the `All` instance hit its enumeration cap (in which case
/// the pair degrades to the default edit-distance alignment). For `All`,
/// pairs repeated across alignments are deduplicated, keeping
/// first-occurrence order.
pub fn find_pairs(a: &Sentence, b: &Sentence, instance: AlignmentInstance) -> (Vec<SpanPair>, bool) {
    match instance {
        AlignmentInstance::Default => (edit_distance_pairs(a, b, CostFunction::Default), false),
        AlignmentInstance::Biased => (edit_distance_pairs(a, b, CostFunction::Biased), false),
        AlignmentInstance::All => match all_alignments_capped(a, b, ALL_ALIGNMENTS_CAP) {
            Some(alignments) => {
                let mut seen = std::collections::HashSet::new();
                let mut pairs = Vec::new();
                for alignment in alignments {
                    for pair in substitutable_pairs(a, b, &alignment) {
                        if seen.insert(pair) {
                            pairs.push(pair);
                        }
                    }
                }
                (pairs, false)
            }
            None => (edit_distance_pairs(a, b, CostFunction::Default), true),
        },
    }
}

/// Process the corpus in order. Each new sentence becomes a fuzzy tree
/// seeded with its root hypothesis and is aligned against every tree already
/// in the space; every substitutable pair is inserted through the three-case
/// logic. Pair finding is pure and runs in parallel; insertion stays in
/// corpus order, so the result is deterministic.
pub fn alignment_learning(corpus: &Corpus, instance: AlignmentInstance) -> HypothesisSpace {
    alignment_learning_report(corpus, instance).0
}

/// Like [`alignment_learning`], also reporting capped pairs.
pub fn alignment_learning_report(
    corpus: &Corpus,
    instance: AlignmentInstance,
) -> (HypothesisSpace, AlignReport) {
    let mut space = HypothesisSpace::new();
    let mut report = AlignReport::default();
    for sentence in corpus.sentences() {
        let f = space.push_sentence(sentence.clone());
        let found: Vec<(Vec<SpanPair>, bool)> = {
            let trees = space.trees();
            (0..f)
                .into_par_iter()
                .map(|g| find_pairs(trees[f].sentence(), trees[g].sentence(), instance))
                .collect()
        };
        for (g, (pairs, capped)) in found.into_iter().enumerate() {
            report.capped_pairs += capped as usize;
            for pair in pairs {
                space.add_pair(f, (pair.a.begin, pair.a.end), g, (pair.b.begin, pair.b.end));
            }
        }
    }
    (space, report)
}
