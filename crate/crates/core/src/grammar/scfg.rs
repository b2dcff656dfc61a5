//! Stochastic context-free grammar extraction and its file format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::corpus::Token;
use crate::error::{Error, Result};
use crate::treebank::{Child, Label, Treebank};

/// A right-hand-side symbol: a non-terminal or a word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    NonTerminal(Label),
    Terminal(Token),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::NonTerminal(l) => write!(f, "{l}"),
            Symbol::Terminal(w) => write!(f, "{w}"),
        }
    }
}

/// `LHS → RHS`, where the right-hand side mixes non-terminals and words.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub lhs: Label,
    pub rhs: Vec<Symbol>,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} →", self.lhs)?;
        for s in &self.rhs {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredRule {
    pub rule: Rule,
    pub probability: f64,
}

/// A stochastic context-free grammar: distinct rules with probabilities
/// normalized per left-hand side. Rules are kept sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct Scfg {
    rules: Vec<ScoredRule>,
    start: BTreeSet<Label>,
}

impl Scfg {
    /// One rule per internal node: the node's label rewrites to its child
    /// constituents and uncovered words, left to right. Probabilities follow
    /// relative frequency per left-hand side.
    pub fn extract(bank: &Treebank) -> Scfg {
        let mut counts: BTreeMap<Rule, u64> = BTreeMap::new();
        let mut lhs_counts: BTreeMap<Label, u64> = BTreeMap::new();
        let mut start = BTreeSet::new();
        for tree in bank.trees() {
            start.insert(tree.root().label.clone());
            let nodes = tree.nodes();
            for (i, node) in nodes.iter().enumerate() {
                let lhs = tree.constituents()[i].label.clone();
                let rhs: Vec<Symbol> = node
                    .children
                    .iter()
                    .map(|c| match c {
                        Child::Node(k) => {
                            Symbol::NonTerminal(tree.constituents()[*k].label.clone())
                        }
                        Child::Word(p) => Symbol::Terminal(tree.sentence().tokens()[*p].clone()),
                    })
                    .collect();
                debug_assert!(!rhs.is_empty());
                *lhs_counts.entry(lhs.clone()).or_insert(0) += 1;
                *counts.entry(Rule { lhs, rhs }).or_insert(0) += 1;
            }
        }
        let rules = counts
            .into_iter()
            .map(|(rule, count)| {
                let probability = count as f64 / lhs_counts[&rule.lhs] as f64;
                ScoredRule { rule, probability }
            })
            .collect();
        Scfg { rules, start }
    }

    pub fn rules(&self) -> &[ScoredRule] {
        &self.rules
    }

    /// Labels observed at tree roots; parses must derive from one of them.
    pub fn start_labels(&self) -> &BTreeSet<Label> {
        &self.start
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Check that per-LHS probabilities sum to 1 within 1e-9.
    pub fn validate(&self) -> Result<()> {
        let mut sums: BTreeMap<&Label, f64> = BTreeMap::new();
        for r in &self.rules {
            *sums.entry(&r.rule.lhs).or_insert(0.0) += r.probability;
        }
        for (lhs, sum) in sums {
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::Invariant(format!(
                    "probabilities of {lhs} sum to {sum}, not 1"
                )));
            }
        }
        Ok(())
    }

    /// One rule per line, `PROB<TAB>LHS<TAB>RHS-symbols...`, preceded by a
    /// `#start` comment naming the start labels.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("#start");
        for s in &self.start {
            out.push(' ');
            out.push_str(s.as_str());
        }
        out.push('\n');
        for r in &self.rules {
            out.push_str(&format!("{}\t{}\t", r.probability, r.rule.lhs));
            let rhs: Vec<String> = r.rule.rhs.iter().map(|s| s.to_string()).collect();
            out.push_str(&rhs.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse the file format back. A symbol counts as a non-terminal iff it
    /// occurs as some rule's left-hand side or among the start labels.
    pub fn parse(text: &str) -> Result<Scfg> {
        let mut start: BTreeSet<Label> = BTreeSet::new();
        let mut raw: Vec<(usize, f64, String, Vec<String>)> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("#start") {
                start.extend(rest.split_whitespace().map(Label::from));
                continue;
            }
            if line.starts_with('#') {
                continue;
            }
            let mut fields = line.splitn(3, '\t');
            let (prob, lhs, rhs) = match (fields.next(), fields.next(), fields.next()) {
                (Some(p), Some(l), Some(r)) => (p, l, r),
                _ => {
                    return Err(Error::format(
                        line_no,
                        "expected PROB<TAB>LHS<TAB>RHS-symbols",
                    ))
                }
            };
            let prob: f64 = prob
                .parse()
                .map_err(|_| Error::format(line_no, format!("bad probability {prob:?}")))?;
            if !(prob > 0.0 && prob <= 1.0) {
                return Err(Error::format(line_no, format!("probability {prob} out of range")));
            }
            let rhs: Vec<String> = rhs.split_whitespace().map(str::to_owned).collect();
            if rhs.is_empty() {
                return Err(Error::format(line_no, "rule with empty right-hand side"));
            }
            raw.push((line_no, prob, lhs.to_owned(), rhs));
        }
        let nts: BTreeSet<&str> = raw
            .iter()
            .map(|(_, _, lhs, _)| lhs.as_str())
            .chain(start.iter().map(Label::as_str))
            .collect();
        let mut rules = Vec::with_capacity(raw.len());
        for (_, probability, lhs, rhs) in &raw {
            let rhs = rhs
                .iter()
                .map(|s| {
                    if nts.contains(s.as_str()) {
                        Symbol::NonTerminal(Label::from(s.as_str()))
                    } else {
                        Symbol::Terminal(s.clone())
                    }
                })
                .collect();
            rules.push(ScoredRule {
                rule: Rule {
                    lhs: Label::from(lhs.as_str()),
                    rhs,
                },
                probability: *probability,
            });
        }
        rules.sort_by(|a, b| a.rule.cmp(&b.rule));
        if start.is_empty() {
            // Fall back to left-hand sides that never occur on the right.
            let used: BTreeSet<&Label> = rules
                .iter()
                .flat_map(|r| r.rule.rhs.iter())
                .filter_map(|s| match s {
                    Symbol::NonTerminal(l) => Some(l),
                    Symbol::Terminal(_) => None,
                })
                .collect();
            start = rules
                .iter()
                .map(|r| &r.rule.lhs)
                .filter(|l| !used.contains(l))
                .cloned()
                .collect();
        }
        Ok(Scfg { rules, start })
    }
}
