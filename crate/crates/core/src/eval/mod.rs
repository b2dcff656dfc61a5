//! Scoring learned treebanks against gold treebanks, baselines, recursion
//! detection and learning curves.

pub mod baseline;
mod curve;
mod recursion;
mod score;

pub use baseline::{left_branching, random_baseline, right_branching};
pub use curve::{learning_curve, CurvePoint};
pub use recursion::{detect_recursion, RecursionHit};
pub use score::{f_beta, mean_std, score_treebank, BracketScore, ScoreOptions};
