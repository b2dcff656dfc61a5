//! Grammar extraction from selected treebanks and corpus reparsing.

mod cky;
mod scfg;
mod stsg;

pub use cky::CkyParser;
pub use scfg::{Rule, ScoredRule, Scfg, Symbol};
pub use stsg::{enumerate_elementary_trees, Fragment, FragmentChild, ScoredFragment, Stsg};

use crate::treebank::Treebank;

/// Extract a grammar from the treebank and reparse every sentence with it;
/// sentences without a parse keep their input tree. Returns the new treebank
/// and the number of unparsed sentences.
pub fn reparse_corpus(bank: &Treebank) -> (Treebank, usize) {
    let grammar = Scfg::extract(bank);
    let parser = CkyParser::new(&grammar);
    let mut unparsed = 0;
    let trees = bank
        .trees()
        .iter()
        .map(|tree| match parser.parse(tree.sentence()) {
            Some(parsed) => parsed,
            None => {
                unparsed += 1;
                tree.clone()
            }
        })
        .collect();
    (Treebank::new(trees), unparsed)
}
