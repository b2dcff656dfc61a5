//! Unsupervised structure bootstrapping for plain-text corpora.
//!
//! The pipeline aligns sentence pairs to propose constituents (alignment
//! learning), resolves overlapping proposals into proper trees (selection
//! learning), optionally extracts a stochastic grammar and reparses the
//! corpus, and scores the result against a gold treebank.

pub mod align;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod grammar;
pub mod pipeline;
pub mod select;
pub mod space;
pub mod treebank;

pub use align::{alignment_learning, AlignmentInstance};
pub use corpus::{parse_plain_corpus, Corpus, Sentence, Token};
pub use error::{Error, Result};
pub use eval::{detect_recursion, learning_curve, random_baseline, score_treebank, BracketScore, ScoreOptions};
pub use grammar::{reparse_corpus, CkyParser, Scfg, Stsg};
pub use pipeline::{run_pipeline, PipelineConfig, PipelineOutput};
pub use select::{select, select_first, SelectionConfig, SelectionModel};
pub use space::{FuzzyTree, Hypothesis, HypothesisSpace, MergeTable, NonTerminalId, START};
pub use treebank::{parse_treebank, serialize_treebank, Constituent, Label, Tree, Treebank};
