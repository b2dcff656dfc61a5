//! Command-line front end: deterministic orchestration of the learning
//! pipeline with run metadata in every artifact.
//!
//! Exit codes: 0 success, 1 usage, 2 malformed or missing data, 3 internal
//! assertion. `ABL_THREADS` caps worker threads.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};

use abl_core::align::{alignment_learning_report, AlignmentInstance};
use abl_core::corpus::{parse_plain_corpus, Corpus};
use abl_core::eval::{
    learning_curve, mean_std, random_baseline, score_treebank, BracketScore, ScoreOptions,
};
use abl_core::grammar::{CkyParser, Scfg, Stsg};
use abl_core::pipeline::{repeated_scores, run_pipeline, PipelineConfig};
use abl_core::select::{select, SelectionConfig, SelectionModel};
use abl_core::space::HypothesisSpace;
use abl_core::treebank::{parse_treebank, Constituent, Tree, Treebank};

#[derive(Parser)]
#[command(
    name = "abl",
    version,
    about = "Unsupervised bracketing: align, select, extract, reparse, evaluate"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_alignment(s: &str) -> Result<AlignmentInstance, String> {
    s.parse()
}

fn parse_selection(s: &str) -> Result<SelectionModel, String> {
    s.parse()
}

#[derive(Args, Clone)]
struct SelectionArgs {
    /// Selection instance: first, leaf or branch.
    #[arg(long, default_value = "leaf", value_parser = parse_selection)]
    selection: SelectionModel,
    /// Drop the preference for larger hypothesis sets on score ties.
    #[arg(long)]
    no_extended: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SelectionArgs {
    fn config(&self) -> SelectionConfig {
        SelectionConfig {
            extended: !self.no_extended,
            seed: self.seed,
            ..SelectionConfig::new(self.selection)
        }
    }
}

#[derive(Args, Clone)]
struct ScoreArgs {
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    /// Ignore constituents spanning the whole sentence.
    #[arg(long)]
    exclude_root: bool,
    /// Ignore single-word constituents.
    #[arg(long)]
    exclude_single: bool,
}

impl ScoreArgs {
    fn options(&self) -> ScoreOptions {
        ScoreOptions {
            exclude_root: self.exclude_root,
            exclude_single: self.exclude_single,
            beta: self.beta,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Learn a hypothesis space from a plain corpus.
    Align {
        corpus: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Alignment instance: default, biased or all.
        #[arg(long, default_value = "default", value_parser = parse_alignment)]
        alignment: AlignmentInstance,
        /// Lowercase the corpus while loading.
        #[arg(long)]
        case_fold: bool,
    },
    /// Resolve overlapping hypotheses into a treebank.
    Select {
        space: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        selection: SelectionArgs,
    },
    /// Extract a stochastic grammar from a treebank.
    ExtractGrammar {
        treebank: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Grammar kind: scfg or stsg.
        #[arg(long, default_value = "scfg")]
        grammar: String,
        /// Elementary-tree depth bound for stsg; 0 means unbounded.
        #[arg(long, default_value_t = 0)]
        max_depth: usize,
    },
    /// Parse a plain corpus with an extracted grammar.
    Parse {
        grammar: PathBuf,
        corpus: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Assign random left/right-branching structures.
    Baseline {
        corpus: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Score a learned treebank against a gold treebank.
    Eval {
        gold: PathBuf,
        learned: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        score: ScoreArgs,
    },
    /// Learning curve over growing prefixes of a gold treebank.
    Curve {
        gold: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        step: usize,
        #[arg(long, default_value = "default", value_parser = parse_alignment)]
        alignment: AlignmentInstance,
        #[command(flatten)]
        selection: SelectionArgs,
        /// Reparse with an extracted grammar before scoring.
        #[arg(long)]
        reparse: bool,
        #[command(flatten)]
        score: ScoreArgs,
    },
    /// Chain align → select [→ extract → reparse] [→ eval].
    Pipeline {
        corpus: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value = "default", value_parser = parse_alignment)]
        alignment: AlignmentInstance,
        #[command(flatten)]
        selection: SelectionArgs,
        /// Reparse with an extracted grammar before writing the treebank.
        #[arg(long)]
        reparse: bool,
        #[arg(long)]
        case_fold: bool,
        /// Gold treebank to score against.
        #[arg(long)]
        gold: Option<PathBuf>,
        /// Where to write the scores CSV (requires --gold).
        #[arg(long)]
        scores: Option<PathBuf>,
        /// Repeat with shuffled corpus order and seeds seed, seed+1, …
        #[arg(long, default_value_t = 1)]
        runs: usize,
        #[command(flatten)]
        score: ScoreArgs,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("ABL_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("abl: ABL_THREADS must be a positive integer");
                return ExitCode::from(1);
            }
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let header = Header {
        args: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
        instance: None,
    };
    let mut outputs = OutputGuard::default();
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
        run(cli.command, &header, &mut outputs)
    })) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(err)) => {
            outputs.remove_all();
            eprintln!("abl: {err:#}");
            ExitCode::from(classify(&err))
        }
        Err(panic) => {
            outputs.remove_all();
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            eprintln!("abl: internal assertion failed: {msg}");
            ExitCode::from(3)
        }
    }
}

/// A bad combination of flags, reported with exit code 1.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

/// 1 for flag misuse, 2 for malformed or missing data, 3 for violated
/// internal invariants.
fn classify(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<UsageError>().is_some() {
            return 1;
        }
        if let Some(core) = cause.downcast_ref::<abl_core::Error>() {
            return match core {
                abl_core::Error::Invariant(_) => 3,
                _ => 2,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 2;
        }
    }
    2
}

/// The comment line written at the top of every artifact: the invocation
/// plus, where meaningful, the instance name (e.g. `default:leaf+`).
struct Header {
    args: String,
    instance: Option<String>,
}

impl Header {
    fn with_instance(&self, name: String) -> Header {
        Header {
            args: self.args.clone(),
            instance: Some(name),
        }
    }
}

/// Files created by the current invocation; on failure they are removed so
/// no partial artifacts survive.
#[derive(Default)]
struct OutputGuard {
    paths: Vec<PathBuf>,
}

impl OutputGuard {
    fn write(&mut self, path: &Path, header: &Header, body: &str) -> Result<()> {
        let content = match &header.instance {
            Some(name) => format!("# abl {} [{name}]\n{body}", header.args),
            None => format!("# abl {}\n{body}", header.args),
        };
        std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))?;
        self.paths.push(path.to_owned());
        Ok(())
    }

    fn remove_all(&mut self) {
        for path in self.paths.drain(..) {
            let _ = std::fs::remove_file(&path);
        }
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    String::from_utf8(bytes).map_err(|_| {
        anyhow!(abl_core::Error::format(
            0,
            format!("{} is not valid UTF-8", path.display())
        ))
    })
}

fn load_corpus(path: &Path, case_fold: bool) -> Result<Corpus> {
    let (corpus, skipped) = parse_plain_corpus(&read_to_string(path)?)?;
    if skipped > 0 {
        eprintln!("abl: warning: skipped {skipped} whitespace-only line(s) in {}", path.display());
    }
    Ok(if case_fold { corpus.case_folded() } else { corpus })
}

fn load_treebank(path: &Path) -> Result<Treebank> {
    Ok(parse_treebank(&read_to_string(path)?)?)
}

fn warn_capped(capped: usize) {
    if capped > 0 {
        eprintln!(
            "abl: warning: {capped} sentence pair(s) exceeded the alignment enumeration cap; \
             used the edit-distance alignment for those"
        );
    }
}

fn score_row(run: usize, s: &BracketScore) -> String {
    format!(
        "{run},{:.2},{:.2},{:.2}\n",
        s.recall_percent(),
        s.precision_percent(),
        s.f_score_percent()
    )
}

fn run(command: Command, header: &Header, outputs: &mut OutputGuard) -> Result<()> {
    match command {
        Command::Align {
            corpus,
            output,
            alignment,
            case_fold,
        } => {
            let corpus = load_corpus(&corpus, case_fold)?;
            let (space, report) = alignment_learning_report(&corpus, alignment);
            warn_capped(report.capped_pairs);
            let header = header.with_instance(alignment.name().to_string());
            outputs.write(&output, &header, &space.to_text())
        }
        Command::Select {
            space,
            output,
            selection,
        } => {
            let space = HypothesisSpace::parse(&read_to_string(&space)?)?;
            let config = selection.config();
            let (bank, report) = select(&space, &config)?;
            if !report.greedy_fallbacks.is_empty() {
                eprintln!(
                    "abl: warning: {} tree(s) used the greedy fallback",
                    report.greedy_fallbacks.len()
                );
            }
            let header = header.with_instance(config.name());
            outputs.write(&output, &header, &bank.to_text())
        }
        Command::ExtractGrammar {
            treebank,
            output,
            grammar,
            max_depth,
        } => {
            let bank = load_treebank(&treebank)?;
            let body = match grammar.as_str() {
                "scfg" => {
                    let g = Scfg::extract(&bank);
                    g.validate()?;
                    g.to_text()
                }
                "stsg" => {
                    let depth = (max_depth > 0).then_some(max_depth);
                    let g = Stsg::extract(&bank, depth);
                    g.validate()?;
                    g.to_text()
                }
                other => {
                    return Err(usage(format!(
                        "unknown grammar kind {other:?} (expected scfg or stsg)"
                    )))
                }
            };
            outputs.write(&output, header, &body)
        }
        Command::Parse {
            grammar,
            corpus,
            output,
        } => {
            let grammar = Scfg::parse(&read_to_string(&grammar)?)?;
            let fallback_root = grammar
                .start_labels()
                .iter()
                .next()
                .cloned()
                .ok_or_else(|| anyhow!("grammar has no start labels"))?;
            let parser = CkyParser::new(&grammar);
            let corpus = load_corpus(&corpus, false)?;
            let mut unparsed = 0usize;
            let trees: Vec<Tree> = corpus
                .sentences()
                .iter()
                .map(|s| match parser.parse(s) {
                    Some(tree) => Ok(tree),
                    None => {
                        // Keep the sentence, annotated with only the root
                        // span, so indexes stay aligned for evaluation.
                        unparsed += 1;
                        Tree::new(
                            s.clone(),
                            vec![Constituent::new(0, s.len(), fallback_root.clone())],
                        )
                        .map_err(anyhow::Error::from)
                    }
                })
                .collect::<Result<_>>()?;
            if unparsed > 0 {
                eprintln!("abl: warning: {unparsed} sentence(s) had no parse; wrote root-only trees");
            }
            outputs.write(&output, header, &Treebank::new(trees).to_text())
        }
        Command::Baseline {
            corpus,
            output,
            seed,
        } => {
            let corpus = load_corpus(&corpus, false)?;
            let bank = random_baseline(&corpus, seed);
            outputs.write(&output, header, &bank.to_text())
        }
        Command::Eval {
            gold,
            learned,
            output,
            score,
        } => {
            let gold = load_treebank(&gold)?;
            let learned = load_treebank(&learned)?;
            let s = score_treebank(&gold, &learned, &score.options())?;
            if s.undefined_precision {
                eprintln!("abl: warning: learned treebank has no constituents; precision set to 0");
            }
            let mut body = String::from("run,recall,precision,fscore\n");
            body.push_str(&score_row(1, &s));
            outputs.write(&output, header, &body)
        }
        Command::Curve {
            gold,
            output,
            step,
            alignment,
            selection,
            reparse,
            score,
        } => {
            let gold = load_treebank(&gold)?;
            let mut config = PipelineConfig::new(alignment, selection.config());
            config.reparse = reparse;
            let header = header.with_instance(config.name());
            let points = learning_curve(&gold, step, &config, &score.options())?;
            let mut body = String::from("prefix,recall,precision,fscore\n");
            for p in &points {
                let _ = writeln!(
                    body,
                    "{},{:.2},{:.2},{:.2}",
                    p.prefix,
                    p.score.recall_percent(),
                    p.score.precision_percent(),
                    p.score.f_score_percent()
                );
            }
            outputs.write(&output, &header, &body)
        }
        Command::Pipeline {
            corpus,
            output,
            alignment,
            selection,
            reparse,
            case_fold,
            gold,
            scores,
            runs,
            score,
        } => {
            if runs == 0 {
                return Err(usage("--runs must be at least 1"));
            }
            if scores.is_some() && gold.is_none() {
                return Err(usage("--scores requires --gold"));
            }
            if runs > 1 && gold.is_none() {
                return Err(usage("--runs above 1 requires --gold"));
            }
            let corpus = load_corpus(&corpus, case_fold)?;
            let mut config = PipelineConfig::new(alignment, selection.config());
            config.reparse = reparse;
            let header = header.with_instance(config.name());
            let out = run_pipeline(&corpus, &config)?;
            warn_capped(out.capped_pairs);
            if !out.greedy_fallbacks.is_empty() {
                eprintln!(
                    "abl: warning: {} tree(s) used the greedy fallback",
                    out.greedy_fallbacks.len()
                );
            }
            if out.unparsed > 0 {
                eprintln!("abl: warning: {} sentence(s) kept their pre-reparse tree", out.unparsed);
            }
            outputs.write(&output, &header, &out.treebank.to_text())?;

            if let Some(gold_path) = gold {
                let mut gold = load_treebank(&gold_path)?;
                if case_fold {
                    gold = gold.case_folded();
                }
                let opts = score.options();
                let all_scores = if runs == 1 {
                    vec![score_treebank(&gold, &out.treebank, &opts)?]
                } else {
                    repeated_scores(&gold, &config, &opts, runs, selection.seed)?
                };
                let mut body = String::from("run,recall,precision,fscore\n");
                for (i, s) in all_scores.iter().enumerate() {
                    body.push_str(&score_row(i + 1, s));
                }
                if all_scores.len() > 1 {
                    let column = |f: fn(&BracketScore) -> f64| {
                        mean_std(&all_scores.iter().map(f).collect::<Vec<_>>())
                    };
                    let r = column(BracketScore::recall_percent);
                    let p = column(BracketScore::precision_percent);
                    let f = column(BracketScore::f_score_percent);
                    let _ = writeln!(body, "# mean,{:.2},{:.2},{:.2}", r.0, p.0, f.0);
                    let _ = writeln!(body, "# stddev,{:.2},{:.2},{:.2}", r.1, p.1, f.1);
                    // Mean followed by the standard deviation between
                    // brackets, the conventional reporting form.
                    println!(
                        "{} over {} runs: recall {:.2} ({:.2})  precision {:.2} ({:.2})  fscore {:.2} ({:.2})",
                        config.name(),
                        all_scores.len(),
                        r.0, r.1, p.0, p.1, f.0, f.1
                    );
                }
                let scores_path = scores.unwrap_or_else(|| output.with_extension("scores.csv"));
                outputs.write(&scores_path, &header, &body)?;
            }
            Ok(())
        }
    }
}
