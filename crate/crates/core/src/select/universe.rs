//! Counts over the pooled hypotheses of a space.

use std::collections::HashMap;

use crate::corpus::Token;
use crate::space::{HypothesisSpace, NonTerminalId};

/// Which grouping of the universe a hypothesis probability uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbabilityModel {
    /// Relative frequency of the yield among all hypotheses.
    Leaf,
    /// Frequency of (yield, root type) within the root type's partition.
    Branch,
}

/// An exact hypothesis probability `count / total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probability {
    pub count: u64,
    pub total: u64,
}

impl Probability {
    pub fn value(&self) -> f64 {
        self.count as f64 / self.total as f64
    }

    /// `-ln(count / total)`.
    pub fn neg_log(&self) -> f64 {
        (self.total as f64).ln() - (self.count as f64).ln()
    }

    /// Exact comparison by value via cross multiplication.
    pub fn cmp_value(&self, other: &Probability) -> std::cmp::Ordering {
        let lhs = self.count as u128 * other.total as u128;
        let rhs = other.count as u128 * self.total as u128;
        lhs.cmp(&rhs)
    }
}

/// The hypothesis universe: every hypothesis of every fuzzy tree, including
/// roots and zero-width hypotheses, counted by yield, by (yield, root) and
/// by root. Root types are canonicalized through the merge table.
#[derive(Debug, Clone)]
pub struct Universe {
    total: u64,
    by_yield: HashMap<Vec<Token>, u64>,
    by_yield_root: HashMap<(Vec<Token>, NonTerminalId), u64>,
    by_root: HashMap<NonTerminalId, u64>,
}

impl Universe {
    pub fn build(space: &HypothesisSpace) -> Universe {
        let mut u = Universe {
            total: 0,
            by_yield: HashMap::new(),
            by_yield_root: HashMap::new(),
            by_root: HashMap::new(),
        };
        for tree in space.trees() {
            for h in tree.hypotheses() {
                let yield_: Vec<Token> = tree.sentence().tokens()[h.begin..h.end].to_vec();
                let root = space.canonical(h.nt);
                u.total += 1;
                *u.by_yield.entry(yield_.clone()).or_insert(0) += 1;
                *u.by_yield_root.entry((yield_, root)).or_insert(0) += 1;
                *u.by_root.entry(root).or_insert(0) += 1;
            }
        }
        u
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Probability of a hypothesis with the given yield and canonical root.
    /// Panics if the hypothesis is not drawn from the universe.
    pub fn probability(
        &self,
        yield_: &[Token],
        root: NonTerminalId,
        model: ProbabilityModel,
    ) -> Probability {
        match model {
            ProbabilityModel::Leaf => {
                let count = *self
                    .by_yield
                    .get(yield_)
                    .expect("hypothesis yield not in the universe");
                Probability {
                    count,
                    total: self.total,
                }
            }
            ProbabilityModel::Branch => {
                let count = *self
                    .by_yield_root
                    .get(&(yield_.to_vec(), root))
                    .expect("hypothesis (yield, root) not in the universe");
                let total = *self
                    .by_root
                    .get(&root)
                    .expect("hypothesis root not in the universe");
                Probability { count, total }
            }
        }
    }

    /// Probability of the `hyp`-th hypothesis of the `tree`-th fuzzy tree.
    pub fn probability_of(
        &self,
        space: &HypothesisSpace,
        tree: usize,
        hyp: usize,
        model: ProbabilityModel,
    ) -> Probability {
        let t = &space.trees()[tree];
        let h = &t.hypotheses()[hyp];
        self.probability(
            &t.sentence().tokens()[h.begin..h.end],
            space.canonical(h.nt),
            model,
        )
    }
}
