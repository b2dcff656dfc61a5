//! Hypothesis spaces: sentences annotated with possibly overlapping span
//! hypotheses, plus the union structure that merges non-terminal types.

use std::collections::HashMap;
use std::fmt;

use crate::corpus::{Corpus, Sentence};
use crate::error::{Error, Result};
use crate::treebank::{Constituent, Label, Tree, Treebank};

/// Non-terminal types are natural numbers starting from 1; 1 is the start
/// symbol. Fresh ids are issued in increasing order and never reused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonTerminalId(pub u64);

/// The start symbol.
pub const START: NonTerminalId = NonTerminalId(1);

impl fmt::Display for NonTerminalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<NonTerminalId> for Label {
    fn from(id: NonTerminalId) -> Label {
        Label::new(id.0.to_string())
    }
}

/// Union structure over non-terminal ids. Merges are permanent and the
/// canonical representative of a class is its smallest id.
#[derive(Debug, Clone, Default)]
pub struct MergeTable {
    /// parent[i] is the parent of id i+1; roots point to themselves.
    parent: Vec<u64>,
}

impl MergeTable {
    /// A table that already knows the start symbol.
    pub fn new() -> Self {
        MergeTable { parent: vec![1] }
    }

    /// A table whose ids 1..=max are all distinct.
    pub fn with_ids(max: u64) -> Self {
        MergeTable {
            parent: (1..=max.max(1)).collect(),
        }
    }

    /// Issue the next unused id.
    pub fn fresh(&mut self) -> NonTerminalId {
        let id = self.parent.len() as u64 + 1;
        self.parent.push(id);
        NonTerminalId(id)
    }

    pub fn contains(&self, id: NonTerminalId) -> bool {
        id.0 >= 1 && id.0 <= self.parent.len() as u64
    }

    /// The canonical id of `id`'s class.
    pub fn canonical(&self, id: NonTerminalId) -> NonTerminalId {
        let mut cur = id.0;
        loop {
            let p = self.parent[(cur - 1) as usize];
            if p == cur {
                return NonTerminalId(cur);
            }
            cur = p;
        }
    }

    fn find_compress(&mut self, id: u64) -> u64 {
        let p = self.parent[(id - 1) as usize];
        if p == id {
            return id;
        }
        let root = self.find_compress(p);
        self.parent[(id - 1) as usize] = root;
        root
    }

    /// Merge the classes of `a` and `b`; the smaller root becomes canonical.
    pub fn merge(&mut self, a: NonTerminalId, b: NonTerminalId) {
        let ra = self.find_compress(a.0);
        let rb = self.find_compress(b.0);
        if ra == rb {
            return;
        }
        let (small, large) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[(large - 1) as usize] = small;
    }
}

/// A possible constituent: a half-open span `⟨begin, end⟩` with a type.
/// `begin == end` encodes the empty side of a substitution pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Hypothesis {
    pub begin: usize,
    pub end: usize,
    pub nt: NonTerminalId,
}

impl Hypothesis {
    pub fn new(begin: usize, end: usize, nt: NonTerminalId) -> Self {
        Hypothesis { begin, end, nt }
    }

    pub fn is_zero_width(&self) -> bool {
        self.begin == self.end
    }

    /// Strict interleaving, the only configuration forbidden in a tree.
    pub fn overlaps(&self, other: &Hypothesis) -> bool {
        (self.begin < other.begin && other.begin < self.end && self.end < other.end)
            || (other.begin < self.begin && self.begin < other.end && other.end < self.end)
    }
}

/// A sentence plus its hypotheses in insertion order. No two hypotheses of
/// one tree share a span; the first is always the root `⟨0, |S|, 1⟩`.
#[derive(Debug, Clone)]
pub struct FuzzyTree {
    sentence: Sentence,
    hypotheses: Vec<Hypothesis>,
    by_span: HashMap<(usize, usize), usize>,
}

impl FuzzyTree {
    pub fn new(sentence: Sentence) -> Self {
        let root = Hypothesis::new(0, sentence.len(), START);
        let mut by_span = HashMap::new();
        by_span.insert((root.begin, root.end), 0);
        FuzzyTree {
            sentence,
            hypotheses: vec![root],
            by_span,
        }
    }

    pub fn sentence(&self) -> &Sentence {
        &self.sentence
    }

    pub fn hypotheses(&self) -> &[Hypothesis] {
        &self.hypotheses
    }

    /// The stored type of the hypothesis equivalent to `⟨begin, end⟩`, if any.
    pub fn equivalent(&self, begin: usize, end: usize) -> Option<NonTerminalId> {
        self.by_span
            .get(&(begin, end))
            .map(|&i| self.hypotheses[i].nt)
    }

    fn push(&mut self, h: Hypothesis) {
        debug_assert!(h.begin <= h.end && h.end <= self.sentence.len());
        debug_assert!(!self.by_span.contains_key(&(h.begin, h.end)));
        self.by_span.insert((h.begin, h.end), self.hypotheses.len());
        self.hypotheses.push(h);
    }
}

/// Which of the three insertion cases applied to a substitutable pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertOutcome {
    /// Neither tree knew the span: both stored under a fresh type.
    Fresh(NonTerminalId),
    /// Exactly one tree knew the span: the other adopted its canonical type.
    Adopted(NonTerminalId),
    /// Both trees knew the span with distinct types: the types were merged.
    Merged(NonTerminalId, NonTerminalId),
    /// Both trees knew the span with the same canonical type.
    Known,
}

/// A list of fuzzy trees plus the merge table their types resolve through.
#[derive(Debug, Clone)]
pub struct HypothesisSpace {
    trees: Vec<FuzzyTree>,
    merge: MergeTable,
}

impl HypothesisSpace {
    pub fn new() -> Self {
        HypothesisSpace {
            trees: Vec::new(),
            merge: MergeTable::new(),
        }
    }

    pub fn trees(&self) -> &[FuzzyTree] {
        &self.trees
    }

    pub fn merge_table(&self) -> &MergeTable {
        &self.merge
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Append a new fuzzy tree seeded with its root hypothesis.
    pub fn push_sentence(&mut self, sentence: Sentence) -> usize {
        self.trees.push(FuzzyTree::new(sentence));
        self.trees.len() - 1
    }

    pub fn canonical(&self, id: NonTerminalId) -> NonTerminalId {
        self.merge.canonical(id)
    }

    /// Insert a substitutable pair of spans into trees `f` and `g`.
    ///
    /// Hypotheses always arrive in pairs sharing one type. Three cases:
    /// if neither tree has an equivalent hypothesis, both sides are stored
    /// under a fresh type; if exactly one has, the other side adopts its
    /// canonical type; if both have, their types are merged (a no-op when
    /// already equal).
    pub fn add_pair(
        &mut self,
        f: usize,
        f_span: (usize, usize),
        g: usize,
        g_span: (usize, usize),
    ) -> InsertOutcome {
        debug_assert_ne!(f, g);
        let in_f = self.trees[f].equivalent(f_span.0, f_span.1);
        let in_g = self.trees[g].equivalent(g_span.0, g_span.1);
        match (in_f, in_g) {
            (None, None) => {
                let nt = self.merge.fresh();
                self.trees[f].push(Hypothesis::new(f_span.0, f_span.1, nt));
                self.trees[g].push(Hypothesis::new(g_span.0, g_span.1, nt));
                InsertOutcome::Fresh(nt)
            }
            (Some(t), None) => {
                let nt = self.merge.canonical(t);
                self.trees[g].push(Hypothesis::new(g_span.0, g_span.1, nt));
                InsertOutcome::Adopted(nt)
            }
            (None, Some(t)) => {
                let nt = self.merge.canonical(t);
                self.trees[f].push(Hypothesis::new(f_span.0, f_span.1, nt));
                InsertOutcome::Adopted(nt)
            }
            (Some(tf), Some(tg)) => {
                let cf = self.merge.canonical(tf);
                let cg = self.merge.canonical(tg);
                if cf == cg {
                    InsertOutcome::Known
                } else {
                    self.merge.merge(cf, cg);
                    InsertOutcome::Merged(cf, cg)
                }
            }
        }
    }

    /// Serialize: one record per tree, `tokens TAB b:e:n b:e:n ...` with the
    /// types resolved to their canonical ids.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for tree in &self.trees {
            out.push_str(&tree.sentence.to_string());
            out.push('\t');
            let mut first = true;
            for h in &tree.hypotheses {
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&format!(
                    "{}:{}:{}",
                    h.begin,
                    h.end,
                    self.merge.canonical(h.nt)
                ));
            }
            out.push('\n');
        }
        out
    }

    /// Parse the record format back. The resulting merge table is the
    /// identity (serialization already resolved every type).
    pub fn parse(text: &str) -> Result<Self> {
        let mut trees = Vec::new();
        let mut max_id = 1u64;
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (words, triples) = line
                .split_once('\t')
                .ok_or_else(|| Error::format(line_no, "expected TAB between tokens and spans"))?;
            let sentence: Sentence = words
                .parse()
                .map_err(|e: Error| Error::format(line_no, e.to_string()))?;
            if triples.split_whitespace().next().is_none() {
                return Err(Error::format(line_no, "record without a root span"));
            }
            let mut tree = FuzzyTree::new(sentence);
            for (k, triple) in triples.split_whitespace().enumerate() {
                let mut parts = triple.split(':');
                let (b, e, n) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
                    (Some(b), Some(e), Some(n), None) => (b, e, n),
                    _ => return Err(Error::format(line_no, format!("bad span triple {triple:?}"))),
                };
                let parse_num = |s: &str| {
                    s.parse::<u64>()
                        .map_err(|_| Error::format(line_no, format!("bad number in {triple:?}")))
                };
                let (b, e, n) = (parse_num(b)? as usize, parse_num(e)? as usize, parse_num(n)?);
                if b > e || e > tree.sentence.len() || n == 0 {
                    return Err(Error::format(line_no, format!("span {triple:?} out of range")));
                }
                max_id = max_id.max(n);
                let h = Hypothesis::new(b, e, NonTerminalId(n));
                if k == 0 {
                    if h != tree.hypotheses[0] {
                        return Err(Error::format(
                            line_no,
                            "first span must be the root hypothesis",
                        ));
                    }
                } else {
                    if tree.equivalent(b, e).is_some() {
                        return Err(Error::format(line_no, format!("duplicate span {b}:{e}")));
                    }
                    tree.push(h);
                }
            }
            trees.push(tree);
        }
        Ok(HypothesisSpace {
            trees,
            merge: MergeTable::with_ids(max_id),
        })
    }

    /// The plain sentences, in order.
    pub fn corpus(&self) -> Corpus {
        Corpus::new(self.trees.iter().map(|t| t.sentence.clone()).collect())
    }

    /// Convert to a treebank, keeping per tree only the hypotheses for which
    /// `kept` is true. Zero-width hypotheses are dropped, types are
    /// canonicalized. Fails if the kept hypotheses still overlap.
    pub fn to_treebank(&self, kept: impl Fn(usize, usize) -> bool) -> Result<Treebank> {
        let mut out = Vec::with_capacity(self.trees.len());
        for (t, tree) in self.trees.iter().enumerate() {
            let constituents: Vec<Constituent> = tree
                .hypotheses
                .iter()
                .enumerate()
                .filter(|(i, h)| kept(t, *i) && !h.is_zero_width())
                .map(|(_, h)| {
                    Constituent::new(h.begin, h.end, Label::from(self.merge.canonical(h.nt)))
                })
                .collect();
            out.push(Tree::new(tree.sentence.clone(), constituents)?);
        }
        Ok(Treebank::new(out))
    }
}

impl Default for HypothesisSpace {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sent(s: &str) -> Sentence {
        s.parse().unwrap()
    }

    #[test]
    fn fresh_ids_are_monotone() {
        let mut table = MergeTable::new();
        let a = table.fresh();
        let b = table.fresh();
        assert_eq!(a, NonTerminalId(2));
        assert_eq!(b, NonTerminalId(3));
    }

    #[test]
    fn canonical_is_idempotent_and_minimal() {
        let mut table = MergeTable::new();
        let a = table.fresh(); // 2
        let b = table.fresh(); // 3
        let c = table.fresh(); // 4
        table.merge(b, c);
        assert_eq!(table.canonical(c), b);
        table.merge(a, c);
        assert_eq!(table.canonical(c), a);
        assert_eq!(table.canonical(b), a);
        assert_eq!(table.canonical(table.canonical(c)), table.canonical(c));
    }

    #[test]
    fn insert_case_one_stores_both() {
        // [Oscar sees [Bert]2]1 / [Oscar sees [Big Bird]2]1
        let mut space = HypothesisSpace::new();
        let f = space.push_sentence(sent("Oscar sees Bert"));
        let g = space.push_sentence(sent("Oscar sees Big Bird"));
        let out = space.add_pair(f, (2, 3), g, (2, 4));
        assert_eq!(out, InsertOutcome::Fresh(NonTerminalId(2)));
        assert_eq!(space.trees()[f].hypotheses()[1], Hypothesis::new(2, 3, NonTerminalId(2)));
        assert_eq!(space.trees()[g].hypotheses()[1], Hypothesis::new(2, 4, NonTerminalId(2)));
    }

    #[test]
    fn insert_case_two_adopts_existing_type() {
        let mut space = HypothesisSpace::new();
        let f = space.push_sentence(sent("Oscar sees Bert"));
        let g = space.push_sentence(sent("Oscar sees Big Bird"));
        space.add_pair(f, (2, 3), g, (2, 4));
        let h = space.push_sentence(sent("Oscar sees Elmo"));
        // f already has ⟨2,3⟩, so the new pair adopts type 2.
        let out = space.add_pair(f, (2, 3), h, (2, 3));
        assert_eq!(out, InsertOutcome::Adopted(NonTerminalId(2)));
        assert_eq!(space.trees()[h].hypotheses()[1], Hypothesis::new(2, 3, NonTerminalId(2)));
        assert_eq!(space.trees()[f].hypotheses().len(), 2); // nothing new in f
    }

    #[test]
    fn insert_case_three_merges_types() {
        let mut space = HypothesisSpace::new();
        let a = space.push_sentence(sent("Oscar sees Bert"));
        let b = space.push_sentence(sent("Oscar sees Big Bird"));
        let c = space.push_sentence(sent("Oscar hugs Bert"));
        let d = space.push_sentence(sent("Oscar hugs Big Bird"));
        space.add_pair(a, (2, 3), b, (2, 4)); // type 2
        space.add_pair(c, (2, 3), d, (2, 4)); // type 3
        let out = space.add_pair(a, (2, 3), c, (2, 3));
        assert_eq!(out, InsertOutcome::Merged(NonTerminalId(2), NonTerminalId(3)));
        assert_eq!(space.canonical(NonTerminalId(3)), NonTerminalId(2));
        // Same pair again: both known with equal canonical types.
        assert_eq!(space.add_pair(a, (2, 3), c, (2, 3)), InsertOutcome::Known);
    }

    #[test]
    fn record_format_round_trip() {
        let mut space = HypothesisSpace::new();
        let f = space.push_sentence(sent("Oscar sees Bert"));
        let g = space.push_sentence(sent("Oscar sees Big Bird"));
        space.add_pair(f, (2, 3), g, (2, 4));
        space.add_pair(f, (0, 2), g, (4, 4)); // zero-width side
        let text = space.to_text();
        assert_eq!(
            text,
            "Oscar sees Bert\t0:3:1 2:3:2 0:2:3\nOscar sees Big Bird\t0:4:1 2:4:2 4:4:3\n"
        );
        let reparsed = HypothesisSpace::parse(&text).unwrap();
        assert_eq!(reparsed.to_text(), text);
    }

    #[test]
    fn treebank_conversion_drops_zero_width_and_canonicalizes() {
        let mut space = HypothesisSpace::new();
        let f = space.push_sentence(sent("a b c"));
        let g = space.push_sentence(sent("a d c"));
        space.add_pair(f, (1, 2), g, (1, 2));
        let bank = space.to_treebank(|_, _| true).unwrap();
        assert_eq!(bank.to_text(), "(1 a (2 b) c)\n(1 a (2 d) c)\n");
    }
}
