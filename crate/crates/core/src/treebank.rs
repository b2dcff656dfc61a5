//! Trees with non-overlapping constituents and the labelled bracket format.
//!
//! The on-disk format is one tree per line, `(LABEL child child ...)` where a
//! child is either a token or a nested bracket. Serialization is canonical:
//! single spaces, no trailing whitespace.

use std::fmt;

use crate::corpus::{Sentence, Token};
use crate::error::{Error, Result};

/// A constituent label. Learned treebanks carry decimal non-terminal ids,
/// gold treebanks whatever names the annotation uses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(String);

impl Label {
    pub fn new(name: impl Into<String>) -> Self {
        Label(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_owned())
    }
}

/// A labelled span `⟨begin, end⟩` over a sentence, half-open and 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constituent {
    pub begin: usize,
    pub end: usize,
    pub label: Label,
}

impl Constituent {
    pub fn new(begin: usize, end: usize, label: impl Into<Label>) -> Self {
        Constituent {
            begin,
            end,
            label: label.into(),
        }
    }

    pub fn span(&self) -> (usize, usize) {
        (self.begin, self.end)
    }

    /// Strict interleaving: `b1 < b2 < e1 < e2` in either order. Nesting and
    /// disjointness are not overlap.
    pub fn overlaps(&self, other: &Constituent) -> bool {
        (self.begin < other.begin && other.begin < self.end && self.end < other.end)
            || (other.begin < self.begin && self.begin < other.end && other.end < self.end)
    }
}

/// A sentence plus pairwise non-overlapping constituents, stored in
/// pre-order (outermost first, siblings left to right).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    sentence: Sentence,
    constituents: Vec<Constituent>,
}

impl Tree {
    /// Build a tree, normalizing constituent order to pre-order. Fails if a
    /// span is out of bounds or empty, if two spans overlap, or if no
    /// constituent covers the whole sentence.
    pub fn new(sentence: Sentence, mut constituents: Vec<Constituent>) -> Result<Self> {
        let n = sentence.len();
        for c in &constituents {
            if c.begin >= c.end || c.end > n {
                return Err(Error::Invariant(format!(
                    "constituent ⟨{}, {}⟩ out of bounds for a {n}-token sentence",
                    c.begin, c.end
                )));
            }
        }
        // Stable sort keeps the original nesting order of equal spans.
        constituents.sort_by(|a, b| a.begin.cmp(&b.begin).then(b.end.cmp(&a.end)));
        for pair in constituents.windows(2) {
            if pair[0].overlaps(&pair[1]) {
                return Err(Error::Invariant(format!(
                    "overlapping constituents ⟨{}, {}⟩ and ⟨{}, {}⟩",
                    pair[0].begin, pair[0].end, pair[1].begin, pair[1].end
                )));
            }
        }
        match constituents.first() {
            Some(root) if root.begin == 0 && root.end == n => {}
            _ => {
                return Err(Error::Invariant(
                    "a tree needs a constituent covering the whole sentence".into(),
                ))
            }
        }
        Ok(Tree {
            sentence,
            constituents,
        })
    }

    /// The token sequence the tree spans.
    pub fn sentence(&self) -> &Sentence {
        &self.sentence
    }

    /// The same structure over a lowercased sentence.
    pub fn case_folded(&self) -> Tree {
        Tree {
            sentence: self.sentence.case_folded(),
            constituents: self.constituents.clone(),
        }
    }

    pub fn constituents(&self) -> &[Constituent] {
        &self.constituents
    }

    pub fn root(&self) -> &Constituent {
        &self.constituents[0]
    }

    /// Direct containment structure: for every constituent, its maximal
    /// immediately dominated child constituents interleaved with the words
    /// not covered by any of them.
    pub fn nodes(&self) -> Vec<Node> {
        let cs = &self.constituents;
        let mut nodes: Vec<Node> = cs
            .iter()
            .map(|_| Node {
                children: Vec::new(),
            })
            .collect();
        // Sorted pre-order makes the enclosing node of each constituent the
        // nearest stack entry that contains it.
        let mut stack: Vec<usize> = Vec::new();
        let mut parent: Vec<Option<usize>> = vec![None; cs.len()];
        for i in 0..cs.len() {
            while let Some(&top) = stack.last() {
                if cs[top].begin <= cs[i].begin && cs[i].end <= cs[top].end {
                    parent[i] = Some(top);
                    break;
                }
                stack.pop();
            }
            if let Some(p) = parent[i] {
                nodes[p].children.push(Child::Node(i));
            }
            stack.push(i);
        }
        // Interleave uncovered words with the child constituents.
        for (i, node) in nodes.iter_mut().enumerate() {
            let kids = std::mem::take(&mut node.children);
            let mut merged = Vec::new();
            let mut pos = cs[i].begin;
            for child in kids {
                let Child::Node(c) = child else { unreachable!() };
                while pos < cs[c].begin {
                    merged.push(Child::Word(pos));
                    pos += 1;
                }
                merged.push(Child::Node(c));
                pos = cs[c].end;
            }
            while pos < cs[i].end {
                merged.push(Child::Word(pos));
                pos += 1;
            }
            node.children = merged;
        }
        nodes
    }

    fn write_node(&self, nodes: &[Node], i: usize, out: &mut String) {
        out.push('(');
        out.push_str(self.constituents[i].label.as_str());
        for child in &nodes[i].children {
            out.push(' ');
            match child {
                Child::Word(pos) => out.push_str(&self.sentence.tokens()[*pos]),
                Child::Node(c) => self.write_node(nodes, *c, out),
            }
        }
        out.push(')');
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes = self.nodes();
        let mut out = String::new();
        self.write_node(&nodes, 0, &mut out);
        f.write_str(&out)
    }
}

/// The direct children of a constituent, in surface order.
#[derive(Debug, Clone)]
pub struct Node {
    pub children: Vec<Child>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Child {
    /// An immediately dominated constituent, by index into `constituents()`.
    Node(usize),
    /// A word not covered by any child constituent, by sentence position.
    Word(usize),
}

/// An ordered list of trees.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Treebank {
    trees: Vec<Tree>,
}

impl Treebank {
    pub fn new(trees: Vec<Tree>) -> Self {
        Treebank { trees }
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// The plain sentences of the treebank, in order.
    pub fn corpus(&self) -> crate::corpus::Corpus {
        crate::corpus::Corpus::new(self.trees.iter().map(|t| t.sentence().clone()).collect())
    }

    pub fn prefix(&self, n: usize) -> Treebank {
        Treebank {
            trees: self.trees[..n.min(self.trees.len())].to_vec(),
        }
    }

    pub fn case_folded(&self) -> Treebank {
        Treebank {
            trees: self.trees.iter().map(Tree::case_folded).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.trees {
            out.push_str(&t.to_string());
            out.push('\n');
        }
        out
    }
}

/// Parse one tree per line; `#` lines and blank lines are skipped.
pub fn parse_treebank(text: &str) -> Result<Treebank> {
    let mut trees = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        trees.push(parse_tree_line(idx + 1, line)?);
    }
    Ok(Treebank::new(trees))
}

pub fn serialize_treebank(bank: &Treebank) -> String {
    bank.to_text()
}

fn parse_tree_line(line_no: usize, line: &str) -> Result<Tree> {
    let mut tokens = Vec::new();
    let mut constituents = Vec::new();
    let mut chars = line.chars().peekable();
    parse_bracket(line_no, &mut chars, &mut tokens, &mut constituents)?;
    skip_spaces(&mut chars);
    if chars.peek().is_some() {
        return Err(Error::format(line_no, "trailing text after tree"));
    }
    let sentence = Sentence::new(tokens)
        .map_err(|_| Error::format(line_no, "tree has no words"))?;
    Tree::new(sentence, constituents).map_err(|e| Error::format(line_no, e.to_string()))
}

fn skip_spaces(chars: &mut std::iter::Peekable<std::str::Chars>) {
    while chars.next_if(|c| c.is_whitespace()).is_some() {}
}

fn parse_bracket(
    line_no: usize,
    chars: &mut std::iter::Peekable<std::str::Chars>,
    tokens: &mut Vec<Token>,
    constituents: &mut Vec<Constituent>,
) -> Result<()> {
    skip_spaces(chars);
    if chars.next_if_eq(&'(').is_none() {
        return Err(Error::format(line_no, "expected '('"));
    }
    skip_spaces(chars);
    let label = read_symbol(chars);
    if label.is_empty() {
        return Err(Error::format(line_no, "bracket without a label"));
    }
    let begin = tokens.len();
    // Reserve the slot so constituents come out in pre-order.
    let slot = constituents.len();
    constituents.push(Constituent::new(begin, begin, label.as_str()));
    let mut children = 0usize;
    loop {
        skip_spaces(chars);
        match chars.peek() {
            Some(')') => {
                chars.next();
                break;
            }
            Some('(') => {
                parse_bracket(line_no, chars, tokens, constituents)?;
                children += 1;
            }
            Some(_) => {
                let word = read_symbol(chars);
                tokens.push(word);
                children += 1;
            }
            None => return Err(Error::format(line_no, "unbalanced parentheses")),
        }
    }
    if children == 0 {
        return Err(Error::format(line_no, format!("empty bracket ({label})")));
    }
    constituents[slot].end = tokens.len();
    Ok(())
}

fn read_symbol(chars: &mut std::iter::Peekable<std::str::Chars>) -> String {
    let mut s = String::new();
    while let Some(c) = chars.next_if(|&c| !c.is_whitespace() && c != '(' && c != ')') {
        s.push(c);
    }
    s
}
