//! Enumeration of all maximal alignments between two sentences.

use std::collections::HashSet;

use crate::corpus::Sentence;

use super::Link;

/// Two links are incompatible when they cross or share an index.
fn incompatible(e: &Link, l: &Link) -> bool {
    (e.a <= l.a && e.b >= l.b) || (e.a >= l.a && e.b <= l.b)
}

/// Every maximal set of pairwise compatible links over all matching word
/// pairs. Links are added incrementally: an alignment that conflicts with a
/// new link forks into the unchanged alignment and one where the conflicting
/// links are replaced by the new link; proper subsets are filtered at the
/// end. With no matching words at all the result is one empty alignment.
///
/// The number of maximal alignments grows combinatorially when a word
/// repeats often in both sentences; callers that cannot afford that should
/// use [`all_alignments_capped`].
pub fn all_alignments(a: &Sentence, b: &Sentence) -> Vec<Vec<Link>> {
    all_alignments_capped(a, b, usize::MAX).expect("uncapped enumeration cannot overflow")
}

/// Like [`all_alignments`], giving up with `None` once more than `cap`
/// alignments are in flight.
pub fn all_alignments_capped(a: &Sentence, b: &Sentence, cap: usize) -> Option<Vec<Vec<Link>>> {
    let mut matches = Vec::new();
    for (i, wa) in a.tokens().iter().enumerate() {
        for (j, wb) in b.tokens().iter().enumerate() {
            if wa == wb {
                matches.push(Link { a: i, b: j });
            }
        }
    }

    let mut alignments: Vec<Vec<Link>> = vec![Vec::new()];
    let mut seen: HashSet<Vec<Link>> = HashSet::new();
    seen.insert(Vec::new());
    for link in matches {
        let old = std::mem::take(&mut alignments);
        seen.clear();
        for al in old {
            let conflicts: Vec<Link> = al
                .iter()
                .copied()
                .filter(|e| incompatible(e, &link))
                .collect();
            if conflicts.is_empty() {
                let mut extended = al;
                extended.push(link);
                if seen.insert(extended.clone()) {
                    alignments.push(extended);
                }
            } else {
                let mut replaced: Vec<Link> = al
                    .iter()
                    .copied()
                    .filter(|e| !incompatible(e, &link))
                    .collect();
                replaced.push(link);
                if seen.insert(al.clone()) {
                    alignments.push(al);
                }
                if seen.insert(replaced.clone()) {
                    alignments.push(replaced);
                }
            }
            if alignments.len() > cap {
                return None;
            }
        }
    }

    // Drop alignments that are proper subsets of another.
    let sets: Vec<HashSet<Link>> = alignments
        .iter()
        .map(|al| al.iter().copied().collect())
        .collect();
    let keep: Vec<bool> = sets
        .iter()
        .map(|s| {
            !sets
                .iter()
                .any(|t| s.len() < t.len() && s.iter().all(|e| t.contains(e)))
        })
        .collect();
    Some(
        alignments
            .into_iter()
            .zip(keep)
            .filter_map(|(al, k)| k.then_some(al))
            .collect(),
    )
}
