//! Shared test support: independent brute-force oracles and random data
//! generators. The oracles deliberately avoid the library's algorithmic
//! paths: edit scripts are enumerated walk by walk, alignments as filtered
//! independent sets, selections by scoring every compatible subset, and
//! elementary trees by marking frontier subsets.

#![allow(dead_code)]

use abl_core::align::{CostFunction, Link};
use abl_core::corpus::{Corpus, Sentence};
use abl_core::grammar::{Fragment, FragmentChild, Scfg, Symbol};
use abl_core::select::{combined_score, tree_rng, Probability, ProbabilityModel, SelectionConfig, Universe};
use abl_core::space::HypothesisSpace;
use abl_core::treebank::{Child, Constituent, Label, Tree, Treebank};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// ───────────────────────── edit script oracle ─────────────────────────

/// Minimum edit cost by exhaustively walking every edit script (no table).
pub fn min_edit_script_cost(a: &Sentence, b: &Sentence, cost: &CostFunction) -> f64 {
    fn walk(a: &Sentence, b: &Sentence, cost: &CostFunction, i: usize, j: usize) -> f64 {
        let mut best = f64::INFINITY;
        if i == a.len() && j == b.len() {
            return 0.0;
        }
        if i < a.len() {
            best = best.min(cost.deletion() + walk(a, b, cost, i + 1, j));
        }
        if j < b.len() {
            best = best.min(cost.insertion() + walk(a, b, cost, i, j + 1));
        }
        if i < a.len() && j < b.len() {
            best = best.min(cost.diagonal(a, b, i, j) + walk(a, b, cost, i + 1, j + 1));
        }
        best
    }
    walk(a, b, cost, 0, 0)
}

// ───────────────────── maximal alignment oracle ───────────────────────

fn links_compatible(x: &Link, y: &Link) -> bool {
    (x.a < y.a && x.b < y.b) || (y.a < x.a && y.b < x.b)
}

/// All maximal pairwise-compatible link sets, enumerated as independent
/// sets and filtered for maximality against the full match list.
pub fn maximal_alignments_oracle(a: &Sentence, b: &Sentence) -> Vec<Vec<Link>> {
    let mut matches = Vec::new();
    for (i, wa) in a.tokens().iter().enumerate() {
        for (j, wb) in b.tokens().iter().enumerate() {
            if wa == wb {
                matches.push(Link { a: i, b: j });
            }
        }
    }
    let mut sets: Vec<Vec<Link>> = Vec::new();
    let mut current: Vec<Link> = Vec::new();
    fn extend(matches: &[Link], from: usize, current: &mut Vec<Link>, out: &mut Vec<Vec<Link>>) {
        out.push(current.clone());
        for k in from..matches.len() {
            if current.iter().all(|l| links_compatible(l, &matches[k])) {
                current.push(matches[k]);
                extend(matches, k + 1, current, out);
                current.pop();
            }
        }
    }
    extend(&matches, 0, &mut current, &mut sets);
    sets.retain(|s| {
        matches
            .iter()
            .filter(|m| !s.contains(m))
            .all(|m| s.iter().any(|l| !links_compatible(l, m)))
    });
    sets
}

/// Canonical form for comparing alignment sets.
pub fn canonical_alignments(mut alignments: Vec<Vec<Link>>) -> Vec<Vec<(usize, usize)>> {
    let mut out: Vec<Vec<(usize, usize)>> = alignments
        .drain(..)
        .map(|mut al| {
            al.sort();
            al.into_iter().map(|l| (l.a, l.b)).collect()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

// ───────────────────────── selection oracle ───────────────────────────

/// Brute-force probabilistic selection for one fuzzy tree: enumerate every
/// non-empty pairwise-compatible subset of the overlap-involved hypotheses,
/// rank by combined score (extended: prefer cardinality), break remaining
/// ties with the documented per-tree random stream.
pub fn oracle_selected_indices(
    space: &HypothesisSpace,
    universe: &Universe,
    tree_index: usize,
    config: &SelectionConfig,
) -> Vec<usize> {
    let tree = &space.trees()[tree_index];
    let hyps = tree.hypotheses();
    let n = hyps.len();
    let involved: Vec<usize> = (0..n)
        .filter(|&i| (0..n).any(|j| j != i && hyps[i].overlaps(&hyps[j])))
        .collect();
    let mut kept: Vec<usize> = (0..n).filter(|i| !involved.contains(i)).collect();
    if involved.is_empty() {
        return kept;
    }
    let model = match config.model {
        abl_core::select::SelectionModel::Leaf => ProbabilityModel::Leaf,
        abl_core::select::SelectionModel::Branch => ProbabilityModel::Branch,
        abl_core::select::SelectionModel::First => unreachable!("oracle is probabilistic"),
    };
    let prob = |i: usize| -> Probability { universe.probability_of(space, tree_index, i, model) };

    // Every non-empty compatible subset.
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    fn extend(
        hyps: &[abl_core::space::Hypothesis],
        involved: &[usize],
        from: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !current.is_empty() {
            out.push(current.clone());
        }
        for k in from..involved.len() {
            let cand = involved[k];
            if current.iter().all(|&i| !hyps[i].overlaps(&hyps[cand])) {
                current.push(cand);
                extend(hyps, involved, k + 1, current, out);
                current.pop();
            }
        }
    }
    extend(hyps, &involved, 0, &mut current, &mut subsets);

    let score_of = |subset: &[usize]| {
        let probs: Vec<Probability> = subset.iter().map(|&i| prob(i)).collect();
        combined_score(&probs)
    };
    let mut best: Vec<Vec<usize>> = Vec::new();
    for subset in subsets {
        if best.is_empty() {
            best.push(subset);
            continue;
        }
        let cmp = if config.extended {
            score_of(&subset).cmp_with_cardinality(&score_of(&best[0]))
        } else {
            score_of(&subset).cmp_score(&score_of(&best[0]))
        };
        match cmp {
            std::cmp::Ordering::Less => {
                best.clear();
                best.push(subset);
            }
            std::cmp::Ordering::Equal => best.push(subset),
            std::cmp::Ordering::Greater => {}
        }
    }
    best.sort();
    best.dedup();
    let pick = if best.len() > 1 {
        tree_rng(config.seed, tree_index as u64).gen_range(0..best.len())
    } else {
        0
    };
    kept.extend(best.swap_remove(pick));
    kept.sort_unstable();
    kept
}

// ─────────────────── elementary tree oracle ───────────────────────────

/// All elementary trees of `tree` by marking every subset of inner nodes as
/// frontier: for each root and each marking, build the fragment that stops
/// at marked nodes; collect distinct fragments per root occurrence.
pub fn frontier_subset_oracle(tree: &Tree, max_depth: Option<usize>) -> Vec<Fragment> {
    let nodes = tree.nodes();
    let n = nodes.len();
    let mut bag: Vec<Fragment> = Vec::new();
    for root in 0..n {
        let mut seen: std::collections::BTreeSet<Fragment> = std::collections::BTreeSet::new();
        for marking in 0u32..(1 << n) {
            let fragment = build_fragment(tree, &nodes, root, marking);
            if max_depth.is_none_or(|d| fragment.depth() <= d) {
                seen.insert(fragment);
            }
        }
        bag.extend(seen);
    }
    bag
}

fn build_fragment(
    tree: &Tree,
    nodes: &[abl_core::treebank::Node],
    node: usize,
    marking: u32,
) -> Fragment {
    let children = nodes[node]
        .children
        .iter()
        .map(|c| match c {
            Child::Word(p) => FragmentChild::Word(tree.sentence().tokens()[*p].clone()),
            Child::Node(k) => {
                let label = tree.constituents()[*k].label.clone();
                if marking & (1 << *k) != 0 {
                    FragmentChild::Frontier(label)
                } else {
                    FragmentChild::Node(build_fragment(tree, nodes, *k, marking))
                }
            }
        })
        .collect();
    Fragment {
        label: tree.constituents()[node].label.clone(),
        children,
    }
}

/// Multiset comparison helper for fragment bags.
pub fn fragment_bag(fragments: Vec<Fragment>) -> std::collections::BTreeMap<Fragment, usize> {
    let mut bag = std::collections::BTreeMap::new();
    for f in fragments {
        *bag.entry(f).or_insert(0) += 1;
    }
    bag
}

// ───────────────────── derivation enumeration oracle ──────────────────

/// Probability of the most likely parse by enumerating every derivation.
/// Only supports grammars without single-non-terminal rules (no unary
/// chains), which is all the extraction of strictly nested trees produces.
pub fn best_derivation_prob(grammar: &Scfg, sentence: &Sentence) -> Option<f64> {
    fn span_probs(grammar: &Scfg, words: &[String], begin: usize, end: usize, label: &Label) -> Vec<f64> {
        let mut out = Vec::new();
        for rule in grammar.rules() {
            if &rule.rule.lhs != label {
                continue;
            }
            splits(grammar, words, begin, end, &rule.rule.rhs, rule.probability, &mut out);
        }
        out
    }
    fn splits(
        grammar: &Scfg,
        words: &[String],
        begin: usize,
        end: usize,
        rhs: &[Symbol],
        acc: f64,
        out: &mut Vec<f64>,
    ) {
        match rhs {
            [] => {
                if begin == end {
                    out.push(acc);
                }
            }
            [Symbol::Terminal(w), rest @ ..] => {
                if begin < end && &words[begin] == w {
                    splits(grammar, words, begin + 1, end, rest, acc, out);
                }
            }
            [Symbol::NonTerminal(l), rest @ ..] => {
                let min_rest = rest.len();
                for mid in begin + 1..=end.saturating_sub(min_rest) {
                    for p in span_probs(grammar, words, begin, mid, l) {
                        splits(grammar, words, mid, end, rest, acc * p, out);
                    }
                }
            }
        }
    }
    assert!(
        grammar
            .rules()
            .iter()
            .all(|r| r.rule.rhs.len() != 1 || matches!(r.rule.rhs[0], Symbol::Terminal(_))),
        "derivation oracle does not support unary non-terminal rules"
    );
    let words = sentence.tokens().to_vec();
    grammar
        .start_labels()
        .iter()
        .flat_map(|s| span_probs(grammar, &words, 0, sentence.len(), s))
        .max_by(|a, b| a.partial_cmp(b).unwrap())
}

// ────────────────────────── random generators ─────────────────────────

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random sentence over `vocab` with length in `1..=max_len`.
pub fn random_sentence(rng: &mut ChaCha8Rng, vocab: &[&str], max_len: usize) -> Sentence {
    let len = rng.gen_range(1..=max_len);
    let tokens: Vec<String> = (0..len)
        .map(|_| vocab[rng.gen_range(0..vocab.len())].to_owned())
        .collect();
    Sentence::new(tokens).unwrap()
}

/// A random strictly nested tree with at most `max_nodes` constituents.
pub fn random_tree(rng: &mut ChaCha8Rng, vocab: &[&str], labels: &[&str], max_nodes: usize) -> Tree {
    let len = rng.gen_range(1..=7);
    let tokens: Vec<String> = (0..len)
        .map(|_| vocab[rng.gen_range(0..vocab.len())].to_owned())
        .collect();
    let sentence = Sentence::new(tokens).unwrap();
    let mut constituents = vec![Constituent::new(
        0,
        len,
        labels[rng.gen_range(0..labels.len())],
    )];
    subdivide(rng, labels, 0, len, max_nodes, &mut constituents);
    Tree::new(sentence, constituents).unwrap()
}

fn subdivide(
    rng: &mut ChaCha8Rng,
    labels: &[&str],
    begin: usize,
    end: usize,
    max_nodes: usize,
    out: &mut Vec<Constituent>,
) {
    if end - begin < 2 || out.len() >= max_nodes || rng.gen_bool(0.3) {
        return;
    }
    // Split into 2..=3 strictly smaller parts; each part may become a
    // constituent and recurse.
    let parts = rng.gen_range(2..=3.min(end - begin));
    let mut cuts: Vec<usize> = (begin + 1..end).collect();
    for i in (1..cuts.len()).rev() {
        let j = rng.gen_range(0..=i);
        cuts.swap(i, j);
    }
    let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    cuts.insert(0, begin);
    cuts.push(end);
    for w in cuts.windows(2) {
        let (b, e) = (w[0], w[1]);
        if out.len() < max_nodes && (e - b) < (end - begin) && rng.gen_bool(0.7) {
            out.push(Constituent::new(b, e, labels[rng.gen_range(0..labels.len())]));
            subdivide(rng, labels, b, e, max_nodes, out);
        }
    }
}

// ─────────────────── synthetic gold corpora (hand CFG) ────────────────

/// A 200-sentence trip-request corpus from a small hand-written grammar,
/// with gold trees. High token overlap between sentences gives alignment
/// learning real structure to find.
pub fn synthetic_gold(seed: u64, sentences: usize) -> Treebank {
    let mut rng = rng(seed);
    let places = ["amsterdam", "utrecht", "leiden", "delft", "haarlem", "breda"];
    let verbs = ["go", "travel", "fly"];
    let wants = ["want", "need"];
    let mut trees = Vec::with_capacity(sentences);
    for _ in 0..sentences {
        let a = places[rng.gen_range(0..places.len())];
        let b = places[rng.gen_range(0..places.len())];
        let v = verbs[rng.gen_range(0..verbs.len())];
        let w = wants[rng.gen_range(0..wants.len())];
        let line = match rng.gen_range(0..5) {
            0 => format!("(S from (NP {a}) to (NP {b}))"),
            1 => format!("(S i {w} to (VP {v} from (NP {a}) to (NP {b})))"),
            2 => format!("(S to (NP {b}))"),
            3 => format!("(S {v} from (NP {a}))"),
            _ => format!("(S i {w} to (VP {v} to (NP {b})))"),
        };
        trees.push(line);
    }
    abl_core::treebank::parse_treebank(&trees.join("\n")).unwrap()
}

/// A corpus from a grammar with a self-embedding rule: noun phrases nest
/// through "of" (e.g. "the cover of the book of the monk").
pub fn recursive_gold(seed: u64, sentences: usize) -> Treebank {
    let mut rng = rng(seed);
    let nouns = ["cover", "book", "monk", "garden", "island", "letter"];
    fn np(rng: &mut ChaCha8Rng, nouns: &[&str], depth: usize) -> String {
        let n = nouns[rng.gen_range(0..nouns.len())];
        if depth > 0 && rng.gen_bool(0.6) {
            format!("(NP the {n} of {})", np(rng, nouns, depth - 1))
        } else {
            format!("(NP the {n})")
        }
    }
    let verbs = ["appeared", "vanished", "burned"];
    let mut trees = Vec::with_capacity(sentences);
    for _ in 0..sentences {
        let depth = rng.gen_range(0..=2);
        let np = np(&mut rng, &nouns, depth);
        let line = match rng.gen_range(0..2) {
            0 => format!("(S {np} (V {}))", verbs[rng.gen_range(0..verbs.len())]),
            _ => format!("(S i saw {np})"),
        };
        trees.push(line);
    }
    abl_core::treebank::parse_treebank(&trees.join("\n")).unwrap()
}

/// Corpus of the treebank's yields.
pub fn yields(bank: &Treebank) -> Corpus {
    bank.corpus()
}
