//! The random branching baseline.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Corpus, Sentence};
use crate::treebank::{Constituent, Tree, Treebank};

/// For each sentence a fair seeded coin picks a left- or right-branching
/// structure. Labels nest from 1 at the root to n at the innermost
/// single-word constituent.
pub fn random_baseline(corpus: &Corpus, seed: u64) -> Treebank {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trees = corpus
        .sentences()
        .iter()
        .map(|s| {
            if rng.gen_bool(0.5) {
                left_branching(s)
            } else {
                right_branching(s)
            }
        })
        .collect();
    Treebank::new(trees)
}

/// `[[[[Oscar]4 sees]3 Big]2 Bird]1`
pub fn left_branching(sentence: &Sentence) -> Tree {
    let n = sentence.len();
    let constituents = (0..n)
        .map(|k| Constituent::new(0, n - k, (k as u64 + 1).to_string().as_str()))
        .collect();
    Tree::new(sentence.clone(), constituents).expect("nested prefixes cannot overlap")
}

/// `[Oscar [sees [Big [Bird]4]3]2]1`
pub fn right_branching(sentence: &Sentence) -> Tree {
    let n = sentence.len();
    let constituents = (0..n)
        .map(|k| Constituent::new(k, n, (k as u64 + 1).to_string().as_str()))
        .collect();
    Tree::new(sentence.clone(), constituents).expect("nested suffixes cannot overlap")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_plain_corpus;

    #[test]
    fn left_branching_shape() {
        let s: Sentence = "Oscar sees Big Bird".parse().unwrap();
        assert_eq!(
            left_branching(&s).to_string(),
            "(1 (2 (3 (4 Oscar) sees) Big) Bird)"
        );
    }

    #[test]
    fn right_branching_shape() {
        let s: Sentence = "Oscar sees Big Bird".parse().unwrap();
        assert_eq!(
            right_branching(&s).to_string(),
            "(1 Oscar (2 sees (3 Big (4 Bird))))"
        );
    }

    #[test]
    fn single_token_sentence_has_one_constituent() {
        let s: Sentence = "x".parse().unwrap();
        for tree in [left_branching(&s), right_branching(&s)] {
            assert_eq!(tree.constituents().len(), 1);
            assert_eq!(tree.constituents()[0].span(), (0, 1));
        }
    }

    #[test]
    fn baseline_is_seeded_and_yield_preserving() {
        let (corpus, _) = parse_plain_corpus("a b c\nd e\nf\n").unwrap();
        let one = random_baseline(&corpus, 9);
        let two = random_baseline(&corpus, 9);
        assert_eq!(one, two);
        for (tree, sentence) in one.trees().iter().zip(corpus.sentences()) {
            assert_eq!(tree.sentence(), sentence);
        }
        // With enough sentences both shapes appear for some seed.
        let (big, _) = parse_plain_corpus(&"x y z\n".repeat(32)).unwrap();
        let bank = random_baseline(&big, 1);
        let shapes: std::collections::HashSet<String> =
            bank.trees().iter().map(|t| t.to_string()).collect();
        assert_eq!(shapes.len(), 2);
    }
}
