//! Stochastic tree substitution grammars: elementary-tree enumeration and
//! extraction.

use std::collections::BTreeMap;
use std::fmt;

use crate::corpus::Token;
use crate::treebank::{Child, Label, Tree, Treebank};

/// A connected fragment of a tree. Non-frontier nodes keep every daughter of
/// the source node; frontier non-terminals carry no children.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fragment {
    pub label: Label,
    pub children: Vec<FragmentChild>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FragmentChild {
    Word(Token),
    Frontier(Label),
    Node(Fragment),
}

impl Fragment {
    /// Edges on the longest root-to-leaf path. Depth 1 fragments are exactly
    /// the per-node grammar rules.
    pub fn depth(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(|c| match c {
                FragmentChild::Node(f) => f.depth(),
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn root(&self) -> &Label {
        &self.label
    }
}

impl fmt::Display for Fragment {
    /// Bracketed form with frontier non-terminals marked by a trailing `*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.label)?;
        for c in &self.children {
            match c {
                FragmentChild::Word(w) => write!(f, " {w}")?,
                FragmentChild::Frontier(l) => write!(f, " {l}*")?,
                FragmentChild::Node(n) => write!(f, " {n}")?,
            }
        }
        write!(f, ")")
    }
}

/// Every elementary tree of `tree` with depth within the bound: fragments
/// are rooted at some node, keep all daughters of every non-frontier node,
/// and have more than one node. `None` means unbounded depth. Fragments are
/// listed per occurrence (a bag, not a set).
pub fn enumerate_elementary_trees(tree: &Tree, max_depth: Option<usize>) -> Vec<Fragment> {
    let nodes = tree.nodes();
    let mut out = Vec::new();
    for root in 0..nodes.len() {
        expansions(tree, &nodes, root, max_depth, &mut out);
    }
    out
}

/// All fragments rooted at `node` with depth ≤ `budget`, appended to `out`.
fn expansions(
    tree: &Tree,
    nodes: &[crate::treebank::Node],
    node: usize,
    budget: Option<usize>,
    out: &mut Vec<Fragment>,
) {
    debug_assert!(budget.is_none_or(|b| b >= 1));
    let mut partial: Vec<Vec<FragmentChild>> = vec![Vec::new()];
    for child in &nodes[node].children {
        let choices: Vec<FragmentChild> = match child {
            Child::Word(p) => vec![FragmentChild::Word(tree.sentence().tokens()[*p].clone())],
            Child::Node(c) => {
                let mut choices = vec![FragmentChild::Frontier(
                    tree.constituents()[*c].label.clone(),
                )];
                let inner_budget = budget.map(|b| b - 1);
                if inner_budget.is_none_or(|b| b >= 1) {
                    let mut inner = Vec::new();
                    expansions(tree, nodes, *c, inner_budget, &mut inner);
                    choices.extend(inner.into_iter().map(FragmentChild::Node));
                }
                choices
            }
        };
        let mut next = Vec::with_capacity(partial.len() * choices.len());
        for prefix in &partial {
            for choice in &choices {
                let mut p = prefix.clone();
                p.push(choice.clone());
                next.push(p);
            }
        }
        partial = next;
    }
    let label = tree.constituents()[node].label.clone();
    out.extend(partial.into_iter().map(|children| Fragment {
        label: label.clone(),
        children,
    }));
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredFragment {
    pub fragment: Fragment,
    pub probability: f64,
}

/// Elementary trees pooled over a treebank, with probabilities normalized
/// per root label.
#[derive(Debug, Clone, PartialEq)]
pub struct Stsg {
    fragments: Vec<ScoredFragment>,
}

impl Stsg {
    pub fn extract(bank: &Treebank, max_depth: Option<usize>) -> Stsg {
        let mut counts: BTreeMap<Fragment, u64> = BTreeMap::new();
        let mut root_counts: BTreeMap<Label, u64> = BTreeMap::new();
        for tree in bank.trees() {
            for fragment in enumerate_elementary_trees(tree, max_depth) {
                *root_counts.entry(fragment.label.clone()).or_insert(0) += 1;
                *counts.entry(fragment).or_insert(0) += 1;
            }
        }
        let fragments = counts
            .into_iter()
            .map(|(fragment, count)| ScoredFragment {
                probability: count as f64 / root_counts[&fragment.label] as f64,
                fragment,
            })
            .collect();
        Stsg { fragments }
    }

    pub fn fragments(&self) -> &[ScoredFragment] {
        &self.fragments
    }

    pub fn is_empty(&self) -> bool {
        self.fragments.is_empty()
    }

    /// Per-root probability sums, for validation.
    pub fn validate(&self) -> crate::error::Result<()> {
        let mut sums: BTreeMap<&Label, f64> = BTreeMap::new();
        for f in &self.fragments {
            *sums.entry(&f.fragment.label).or_insert(0.0) += f.probability;
        }
        for (root, sum) in sums {
            if (sum - 1.0).abs() > 1e-9 {
                return Err(crate::error::Error::Invariant(format!(
                    "fragment probabilities of {root} sum to {sum}, not 1"
                )));
            }
        }
        Ok(())
    }

    /// One fragment per line, `PROB<TAB>bracketed-fragment`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.fragments {
            out.push_str(&format!("{}\t{}\n", f.probability, f.fragment));
        }
        out
    }
}
