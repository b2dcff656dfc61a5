//! Viterbi chart parsing for extracted grammars with arbitrary right-hand
//! sides. Rules are binarized internally; binarization symbols and the
//! preterminals wrapped around in-rule words are erased from output trees.

use std::collections::{BTreeSet, HashMap};

use crate::corpus::{Sentence, Token};
use crate::treebank::{Constituent, Label, Tree};

use super::scfg::{Scfg, Symbol};

#[derive(Debug, Clone, Copy)]
enum Back {
    Lex,
    Unary(usize),
    Binary { split: usize, left: usize, right: usize },
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    cost: f64,
    back: Back,
}

type Cell = HashMap<usize, Entry>;

/// A parser for one grammar. Costs are `-ln` of the rule probabilities; the
/// best parse minimizes the total cost. Ties are broken deterministically by
/// the canonical (lexicographic) rule order, then by the smaller split point.
pub struct CkyParser {
    n_real: usize,
    labels: Vec<Label>,
    lexical: HashMap<Token, Vec<(usize, f64)>>,
    unary: Vec<(usize, usize, f64)>,
    binary: Vec<(usize, usize, usize, f64)>,
    start: Vec<usize>,
    n_syms: usize,
}

impl CkyParser {
    pub fn new(grammar: &Scfg) -> CkyParser {
        let mut nt_set: BTreeSet<Label> = grammar.start_labels().iter().cloned().collect();
        for r in grammar.rules() {
            nt_set.insert(r.rule.lhs.clone());
            for s in &r.rule.rhs {
                if let Symbol::NonTerminal(l) = s {
                    nt_set.insert(l.clone());
                }
            }
        }
        let labels: Vec<Label> = nt_set.into_iter().collect();
        let ids: HashMap<Label, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let n_real = labels.len();

        let mut parser = CkyParser {
            n_real,
            labels,
            lexical: HashMap::new(),
            unary: Vec::new(),
            binary: Vec::new(),
            start: grammar.start_labels().iter().map(|l| ids[l]).collect(),
            n_syms: n_real,
        };
        let mut preterminals: HashMap<Token, usize> = HashMap::new();

        for r in grammar.rules() {
            let cost = -r.probability.ln();
            match r.rule.rhs.as_slice() {
                [Symbol::Terminal(w)] => {
                    parser
                        .lexical
                        .entry(w.clone())
                        .or_default()
                        .push((ids[&r.rule.lhs], cost));
                }
                [Symbol::NonTerminal(child)] => {
                    parser.unary.push((ids[&r.rule.lhs], ids[child], cost));
                }
                rhs => {
                    let syms: Vec<usize> = rhs
                        .iter()
                        .map(|s| match s {
                            Symbol::NonTerminal(l) => ids[l],
                            Symbol::Terminal(w) => {
                                *preterminals.entry(w.clone()).or_insert_with(|| {
                                    let sym = parser.n_syms;
                                    parser.n_syms += 1;
                                    parser.lexical.entry(w.clone()).or_default().push((sym, 0.0));
                                    sym
                                })
                            }
                        })
                        .collect();
                    // Left-branching chain of binary rules; the probability
                    // sits on the final (topmost) one.
                    let mut cur = syms[0];
                    for (m, &sym) in syms.iter().enumerate().skip(1) {
                        let last = m == syms.len() - 1;
                        let lhs = if last {
                            ids[&r.rule.lhs]
                        } else {
                            parser.n_syms += 1;
                            parser.n_syms - 1
                        };
                        parser
                            .binary
                            .push((lhs, cur, sym, if last { cost } else { 0.0 }));
                        cur = lhs;
                    }
                }
            }
        }
        parser
    }

    /// The most probable parse, or `None` when a word is unknown or no
    /// derivation from a start label covers the sentence.
    pub fn parse(&self, sentence: &Sentence) -> Option<Tree> {
        self.parse_scored(sentence).map(|(tree, _)| tree)
    }

    /// Like `parse`, also returning the total `-ln` probability.
    pub fn parse_scored(&self, sentence: &Sentence) -> Option<(Tree, f64)> {
        let n = sentence.len();
        let words = sentence.tokens();
        if words.iter().any(|w| !self.lexical.contains_key(w)) {
            return None;
        }

        let idx = |b: usize, e: usize| b * (n + 1) + e;
        let mut chart: Vec<Cell> = vec![Cell::new(); (n + 1) * (n + 1)];

        for (i, word) in words.iter().enumerate() {
            let cell = &mut chart[idx(i, i + 1)];
            for &(sym, cost) in &self.lexical[word] {
                relax(cell, sym, cost, Back::Lex);
            }
            self.unary_closure(cell);
        }

        for len in 2..=n {
            for begin in 0..=n - len {
                let end = begin + len;
                let mut cell = Cell::new();
                for &(lhs, left, right, cost) in &self.binary {
                    for split in begin + 1..end {
                        let Some(le) = chart[idx(begin, split)].get(&left) else {
                            continue;
                        };
                        let Some(re) = chart[idx(split, end)].get(&right) else {
                            continue;
                        };
                        relax(
                            &mut cell,
                            lhs,
                            le.cost + re.cost + cost,
                            Back::Binary { split, left, right },
                        );
                    }
                }
                self.unary_closure(&mut cell);
                chart[idx(begin, end)] = cell;
            }
        }

        let goal = &chart[idx(0, n)];
        let mut best: Option<(usize, f64)> = None;
        for &s in &self.start {
            if let Some(e) = goal.get(&s) {
                if best.is_none() || e.cost < best.unwrap().1 {
                    best = Some((s, e.cost));
                }
            }
        }
        let (start, cost) = best?;
        let mut constituents = Vec::new();
        self.reconstruct(&chart, idx, 0, n, start, &mut constituents);
        let tree = Tree::new(sentence.clone(), constituents)
            .expect("chart derivations are well-nested");
        Some((tree, cost))
    }

    fn unary_closure(&self, cell: &mut Cell) {
        // Costs are non-negative, so strict improvement terminates; the cap
        // covers the longest useful chain.
        for _ in 0..=self.n_syms {
            let mut changed = false;
            for &(lhs, child, cost) in &self.unary {
                let Some(c) = cell.get(&child) else { continue };
                if relax(cell, lhs, c.cost + cost, Back::Unary(child)) {
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }

    fn reconstruct(
        &self,
        chart: &[Cell],
        idx: impl Fn(usize, usize) -> usize + Copy,
        begin: usize,
        end: usize,
        sym: usize,
        out: &mut Vec<Constituent>,
    ) {
        if sym < self.n_real {
            out.push(Constituent::new(begin, end, self.labels[sym].clone()));
        }
        match chart[idx(begin, end)][&sym].back {
            Back::Lex => {}
            Back::Unary(child) => self.reconstruct(chart, idx, begin, end, child, out),
            Back::Binary { split, left, right } => {
                self.reconstruct(chart, idx, begin, split, left, out);
                self.reconstruct(chart, idx, split, end, right, out);
            }
        }
    }
}

fn relax(cell: &mut Cell, sym: usize, cost: f64, back: Back) -> bool {
    match cell.get(&sym) {
        Some(e) if e.cost <= cost => false,
        _ => {
            cell.insert(sym, Entry { cost, back });
            true
        }
    }
}
