//! Recursive structure: same-typed constituents where one span contains the
//! other.

use crate::treebank::{Constituent, Treebank};

/// One detected recursive pair; `outer` contains (or equals the span of)
/// `inner` and both carry the same label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionHit {
    pub tree: usize,
    pub outer: Constituent,
    pub inner: Constituent,
}

/// Every nested-or-equal same-label constituent pair, per tree. A treebank
/// contains recursive structure iff the result is non-empty.
pub fn detect_recursion(bank: &Treebank) -> Vec<RecursionHit> {
    let mut hits = Vec::new();
    for (t, tree) in bank.trees().iter().enumerate() {
        let cs = tree.constituents();
        // Pre-order means an earlier constituent either contains or is
        // disjoint from a later one.
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                if cs[i].label == cs[j].label
                    && cs[i].begin <= cs[j].begin
                    && cs[j].end <= cs[i].end
                {
                    hits.push(RecursionHit {
                        tree: t,
                        outer: cs[i].clone(),
                        inner: cs[j].clone(),
                    });
                }
            }
        }
    }
    hits
}
