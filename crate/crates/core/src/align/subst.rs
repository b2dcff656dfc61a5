//! From links to word clusters to substitutable span pairs.

use std::collections::HashSet;

use crate::corpus::Sentence;

use super::Link;

/// A half-open index range within one sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Span {
    pub begin: usize,
    pub end: usize,
}

impl Span {
    pub fn new(begin: usize, end: usize) -> Self {
        Span { begin, end }
    }

    pub fn is_empty(&self) -> bool {
        self.begin == self.end
    }
}

/// Equal subsentences: a maximal run of adjacent links.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordCluster {
    pub a: Span,
    pub b: Span,
}

/// A substitutable pair of spans, one per sentence. At most one side may be
/// empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpanPair {
    pub a: Span,
    pub b: Span,
}

/// Combine adjacent links (both coordinate deltas +1) into maximal runs.
/// Links may arrive in any order; they are processed sorted.
pub fn clusters_from_links(links: &[Link]) -> Vec<WordCluster> {
    let mut sorted: Vec<Link> = links.to_vec();
    sorted.sort_by_key(|l| (l.a, l.b));
    let mut clusters: Vec<WordCluster> = Vec::new();
    for link in sorted {
        match clusters.last_mut() {
            Some(c) if c.a.end == link.a && c.b.end == link.b => {
                c.a.end += 1;
                c.b.end += 1;
            }
            _ => clusters.push(WordCluster {
                a: Span::new(link.a, link.a + 1),
                b: Span::new(link.b, link.b + 1),
            }),
        }
    }
    clusters
}

/// The paired gaps around and between the clusters. Pairs that are empty on
/// both sides are dropped; a pair with one empty side is kept and later
/// becomes a zero-width hypothesis.
pub fn complement_spans(clusters: &[WordCluster], len_a: usize, len_b: usize) -> Vec<SpanPair> {
    let mut pairs = Vec::with_capacity(clusters.len() + 1);
    let mut prev_a = 0;
    let mut prev_b = 0;
    for c in clusters {
        pairs.push(SpanPair {
            a: Span::new(prev_a, c.a.begin),
            b: Span::new(prev_b, c.b.begin),
        });
        prev_a = c.a.end;
        prev_b = c.b.end;
    }
    pairs.push(SpanPair {
        a: Span::new(prev_a, len_a),
        b: Span::new(prev_b, len_b),
    });
    pairs.retain(|p| !(p.a.is_empty() && p.b.is_empty()));
    pairs
}

/// The substitutable pairs induced by one set of links: the cluster
/// complement, minus pairs whose two sides share a word (substitutable
/// subsentences may not have words in common).
pub fn substitutable_pairs(a: &Sentence, b: &Sentence, links: &[Link]) -> Vec<SpanPair> {
    let clusters = clusters_from_links(links);
    let mut pairs = complement_spans(&clusters, a.len(), b.len());
    pairs.retain(|p| {
        if p.a.is_empty() || p.b.is_empty() {
            return true;
        }
        let left: HashSet<&str> = a.tokens()[p.a.begin..p.a.end]
            .iter()
            .map(String::as_str)
            .collect();
        !b.tokens()[p.b.begin..p.b.end]
            .iter()
            .any(|w| left.contains(w.as_str()))
    });
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sent(s: &str) -> Sentence {
        s.parse().unwrap()
    }

    fn link(a: usize, b: usize) -> Link {
        Link { a, b }
    }

    #[test]
    fn single_unequal_word() {
        // "Oscar sees Bert" / "Oscar sees Ernie": one pair, spans (2,3)/(2,3).
        let a = sent("Oscar sees Bert");
        let b = sent("Oscar sees Ernie");
        let pairs = substitutable_pairs(&a, &b, &[link(0, 0), link(1, 1)]);
        assert_eq!(
            pairs,
            vec![SpanPair {
                a: Span::new(2, 3),
                b: Span::new(2, 3)
            }]
        );
    }

    #[test]
    fn shared_prefix_differs_in_last_word() {
        // "Bert süt egy kekszet" / "Bert süt egy kalácsot" → pair (3,4)/(3,4).
        let a = sent("Bert süt egy kekszet");
        let b = sent("Bert süt egy kalácsot");
        let pairs = substitutable_pairs(&a, &b, &[link(0, 0), link(1, 1), link(2, 2)]);
        assert_eq!(
            pairs,
            vec![SpanPair {
                a: Span::new(3, 4),
                b: Span::new(3, 4)
            }]
        );
    }

    #[test]
    fn identical_sentences_have_no_pairs() {
        let a = sent("x y");
        let pairs = substitutable_pairs(&a, &a, &[link(0, 0), link(1, 1)]);
        assert!(pairs.is_empty());
    }

    #[test]
    fn one_sided_gaps_are_kept() {
        // "from Sesame Street to England" / "from England to Sesame Street"
        // with from/Sesame/Street linked: an empty-side pair and "to England"
        // vs the empty end.
        let a = sent("from Sesame Street to England");
        let b = sent("from England to Sesame Street");
        let pairs = substitutable_pairs(&a, &b, &[link(0, 0), link(1, 3), link(2, 4)]);
        assert_eq!(
            pairs,
            vec![
                SpanPair {
                    a: Span::new(1, 1),
                    b: Span::new(1, 3)
                },
                SpanPair {
                    a: Span::new(3, 5),
                    b: Span::new(5, 5)
                },
            ]
        );
    }

    #[test]
    fn clusters_are_maximal_runs() {
        let clusters = clusters_from_links(&[link(0, 0), link(1, 1), link(3, 4)]);
        assert_eq!(
            clusters,
            vec![
                WordCluster {
                    a: Span::new(0, 2),
                    b: Span::new(0, 2)
                },
                WordCluster {
                    a: Span::new(3, 4),
                    b: Span::new(4, 5)
                },
            ]
        );
    }

    #[test]
    fn no_links_pairs_whole_sentences() {
        let a = sent("a b");
        let b = sent("c");
        let pairs = substitutable_pairs(&a, &b, &[]);
        assert_eq!(
            pairs,
            vec![SpanPair {
                a: Span::new(0, 2),
                b: Span::new(0, 1)
            }]
        );
    }

    #[test]
    fn pairs_sharing_a_word_are_dropped() {
        // Only "c" is linked; the gaps "x q" / "r x" share the word "x".
        let a = sent("c x q");
        let b = sent("c r x");
        let pairs = substitutable_pairs(&a, &b, &[link(0, 0)]);
        assert!(pairs.is_empty());
    }
}
