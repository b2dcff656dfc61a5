//! Selection learning: resolve overlapping hypotheses, leaving a proper
//! tree per sentence.

mod score;
mod universe;

pub use score::{combined_score, CombinedScore};
pub use universe::{Probability, ProbabilityModel, Universe};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::space::{Hypothesis, HypothesisSpace};
use crate::treebank::Treebank;

/// Strict interleaving of two spans; the configuration a tree may not keep.
pub fn overlaps(a: &Hypothesis, b: &Hypothesis) -> bool {
    a.overlaps(b)
}

/// Which selection instance to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionModel {
    /// Keep the hypothesis learned earlier (order-based, non-probabilistic).
    First,
    /// Probabilistic, scoring hypotheses by yield frequency.
    Leaf,
    /// Probabilistic, scoring by yield frequency within the root partition.
    Branch,
}

impl SelectionModel {
    pub fn name(&self) -> &'static str {
        match self {
            SelectionModel::First => "first",
            SelectionModel::Leaf => "leaf",
            SelectionModel::Branch => "branch",
        }
    }
}

impl std::str::FromStr for SelectionModel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "first" => Ok(SelectionModel::First),
            "leaf" => Ok(SelectionModel::Leaf),
            "branch" => Ok(SelectionModel::Branch),
            other => Err(format!("unknown selection model {other:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SelectionConfig {
    pub model: SelectionModel,
    /// Prefer larger hypothesis sets among equal scores (the ⁺ variants).
    pub extended: bool,
    pub seed: u64,
    /// Largest overlap component searched exactly; larger ones fall back to
    /// a greedy best-first pass and are reported.
    pub component_cap: usize,
}

impl SelectionConfig {
    pub fn new(model: SelectionModel) -> Self {
        SelectionConfig {
            model,
            extended: true,
            seed: 0,
            component_cap: 20,
        }
    }

    pub fn name(&self) -> String {
        match self.model {
            SelectionModel::First => "first".into(),
            m if self.extended => format!("{}+", m.name()),
            m => m.name().to_string(),
        }
    }
}

/// Trees that could not be searched exactly and were resolved greedily.
#[derive(Debug, Clone, Default)]
pub struct SelectionReport {
    pub greedy_fallbacks: Vec<usize>,
}

/// Keep each hypothesis iff it overlaps no hypothesis kept before it. The
/// result is the greedy prefix-compatible subset of the insertion order.
pub fn select_first(space: &HypothesisSpace) -> Result<Treebank> {
    let kept = first_kept(space);
    space.to_treebank(|t, i| kept[t][i])
}

fn first_kept(space: &HypothesisSpace) -> Vec<Vec<bool>> {
    space
        .trees()
        .iter()
        .map(|tree| {
            let hyps = tree.hypotheses();
            let mut kept: Vec<usize> = Vec::new();
            let mut flags = vec![false; hyps.len()];
            for (i, h) in hyps.iter().enumerate() {
                if kept.iter().all(|&k| !hyps[k].overlaps(h)) {
                    kept.push(i);
                    flags[i] = true;
                }
            }
            flags
        })
        .collect()
}

/// Run the configured selection instance.
pub fn select(space: &HypothesisSpace, config: &SelectionConfig) -> Result<(Treebank, SelectionReport)> {
    match config.model {
        SelectionModel::First => Ok((select_first(space)?, SelectionReport::default())),
        SelectionModel::Leaf | SelectionModel::Branch => select_probabilistic(space, config),
    }
}

/// Probabilistic selection. Hypotheses involved in no overlap are kept
/// unconditionally; among the overlap-involved ones the pairwise compatible
/// subset with the best combined score is kept.
///
/// The mean-of-logprobs objective makes the optimum explicit: the mean of a
/// set is at least the smallest member value, with equality exactly when
/// every member attains it. The optimal subsets are therefore the non-empty
/// compatible subsets of the maximum-probability class; the extended variant
/// keeps the largest of them. Ties are broken by a seeded draw over the
/// candidates in canonical order, with one stream per tree.
pub fn select_probabilistic(
    space: &HypothesisSpace,
    config: &SelectionConfig,
) -> Result<(Treebank, SelectionReport)> {
    let model = match config.model {
        SelectionModel::Leaf => ProbabilityModel::Leaf,
        SelectionModel::Branch => ProbabilityModel::Branch,
        SelectionModel::First => {
            return Err(crate::error::Error::Invariant(
                "probabilistic selection called with the order-based model".into(),
            ))
        }
    };
    let universe = Universe::build(space);
    let mut report = SelectionReport::default();
    let mut kept: Vec<Vec<bool>> = Vec::with_capacity(space.len());

    for (t, tree) in space.trees().iter().enumerate() {
        let hyps = tree.hypotheses();
        let n = hyps.len();
        let mut flags = vec![true; n];
        let adjacency = overlap_adjacency(hyps);
        let involved: Vec<usize> = (0..n).filter(|&i| !adjacency[i].is_empty()).collect();
        if involved.is_empty() {
            kept.push(flags);
            continue;
        }
        for &i in &involved {
            flags[i] = false;
        }
        let probs: Vec<Probability> = involved
            .iter()
            .map(|&i| universe.probability_of(space, t, i, model))
            .collect();

        let exact = largest_component(&involved, &adjacency) <= config.component_cap;
        let chosen = if exact {
            match choose_exact(hyps, &involved, &probs, config, t) {
                Some(set) => set,
                None => {
                    report.greedy_fallbacks.push(t);
                    choose_greedy(hyps, &involved, &probs)
                }
            }
        } else {
            report.greedy_fallbacks.push(t);
            choose_greedy(hyps, &involved, &probs)
        };
        for i in chosen {
            flags[i] = true;
        }
        kept.push(flags);
    }

    let bank = space.to_treebank(|t, i| kept[t][i])?;
    Ok((bank, report))
}

fn overlap_adjacency(hyps: &[Hypothesis]) -> Vec<Vec<usize>> {
    let n = hyps.len();
    let mut adjacency = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if hyps[i].overlaps(&hyps[j]) {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    adjacency
}

fn largest_component(involved: &[usize], adjacency: &[Vec<usize>]) -> usize {
    let mut seen: std::collections::HashSet<usize> = std::collections::HashSet::new();
    let mut largest = 0;
    for &start in involved {
        if seen.contains(&start) {
            continue;
        }
        let mut stack = vec![start];
        let mut size = 0;
        seen.insert(start);
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in &adjacency[v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        largest = largest.max(size);
    }
    largest
}

/// Upper bound on how many tied candidates are enumerated before giving up
/// and falling back to the greedy pass.
const ENUM_CAP: usize = 1 << 16;

fn choose_exact(
    hyps: &[Hypothesis],
    involved: &[usize],
    probs: &[Probability],
    config: &SelectionConfig,
    tree_index: usize,
) -> Option<Vec<usize>> {
    // The maximum-probability class.
    let best = probs
        .iter()
        .copied()
        .max_by(|a, b| a.cmp_value(b))
        .expect("overlap-involved set is non-empty");
    let class: Vec<usize> = involved
        .iter()
        .zip(probs)
        .filter(|(_, p)| p.cmp_value(&best) == std::cmp::Ordering::Equal)
        .map(|(&i, _)| i)
        .collect();

    // All non-empty compatible subsets of the class, in lexicographic order
    // of their index lists.
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    if !enumerate_compatible(hyps, &class, 0, &mut current, &mut candidates) {
        return None;
    }
    if config.extended {
        let max_len = candidates.iter().map(Vec::len).max().unwrap_or(0);
        candidates.retain(|c| c.len() == max_len);
    }
    debug_assert!(candidates.windows(2).all(|w| w[0] < w[1]));
    let pick = if candidates.len() > 1 {
        let mut rng = tree_rng(config.seed, tree_index as u64);
        rng.gen_range(0..candidates.len())
    } else {
        0
    };
    Some(candidates.swap_remove(pick))
}

/// Depth-first enumeration over `class[from..]`, collecting every non-empty
/// compatible extension of `current`. Returns false when the cap is hit.
fn enumerate_compatible(
    hyps: &[Hypothesis],
    class: &[usize],
    from: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) -> bool {
    if !current.is_empty() {
        if out.len() >= ENUM_CAP {
            return false;
        }
        out.push(current.clone());
    }
    for k in from..class.len() {
        let cand = class[k];
        if current.iter().all(|&i| !hyps[i].overlaps(&hyps[cand])) {
            current.push(cand);
            if !enumerate_compatible(hyps, class, k + 1, current, out) {
                return false;
            }
            current.pop();
        }
    }
    true
}

/// Greedy best-first: walk the overlap-involved hypotheses from most to
/// least probable (ties by insertion order) and keep what stays compatible.
fn choose_greedy(hyps: &[Hypothesis], involved: &[usize], probs: &[Probability]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..involved.len()).collect();
    order.sort_by(|&x, &y| probs[y].cmp_value(&probs[x]).then(involved[x].cmp(&involved[y])));
    let mut chosen: Vec<usize> = Vec::new();
    for k in order {
        let cand = involved[k];
        if chosen.iter().all(|&i| !hyps[i].overlaps(&hyps[cand])) {
            chosen.push(cand);
        }
    }
    chosen.sort_unstable();
    chosen
}

/// The per-tree random stream: one generator per (seed, tree index), so the
/// outcome does not depend on scheduling or on other trees' draws.
pub fn tree_rng(seed: u64, tree_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(tree_index.wrapping_add(1));
    rng
}
