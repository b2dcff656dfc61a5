//! Learning curves: the pipeline applied to growing corpus prefixes.

use crate::error::{Error, Result};
use crate::eval::score::{score_treebank, BracketScore, ScoreOptions};
use crate::pipeline::{run_pipeline, PipelineConfig};
use crate::treebank::Treebank;

#[derive(Debug, Clone, Copy)]
pub struct CurvePoint {
    /// Number of sentences the pipeline was trained and scored on.
    pub prefix: usize,
    pub score: BracketScore,
}

/// Run the pipeline on the prefixes of size `step`, `2·step`, …, ending
/// with the full treebank, scoring each prefix against the gold prefix.
pub fn learning_curve(
    gold: &Treebank,
    step: usize,
    config: &PipelineConfig,
    score_opts: &ScoreOptions,
) -> Result<Vec<CurvePoint>> {
    if step == 0 || step > gold.len() {
        return Err(Error::Invariant(format!(
            "curve step {step} must be in 1..={}",
            gold.len()
        )));
    }
    let mut sizes: Vec<usize> = (1..)
        .map(|k| k * step)
        .take_while(|&s| s <= gold.len())
        .collect();
    if sizes.last() != Some(&gold.len()) {
        sizes.push(gold.len());
    }
    let mut points = Vec::with_capacity(sizes.len());
    for prefix in sizes {
        let gold_prefix = gold.prefix(prefix);
        let output = run_pipeline(&gold_prefix.corpus(), config)?;
        let score = score_treebank(&gold_prefix, &output.treebank, score_opts)?;
        points.push(CurvePoint { prefix, score });
    }
    Ok(points)
}
