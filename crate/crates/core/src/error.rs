use thiserror::Error;

/// Errors surfaced by parsing, scoring and pipeline code.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input data; `line` is 1-based.
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    /// Gold and learned treebanks disagree on the words of a sentence.
    #[error("sentence {index}: yields of gold and learned trees differ")]
    YieldMismatch { index: usize },
    /// The two treebanks do not pair up sentence by sentence.
    #[error("treebank sizes differ: gold {gold} vs learned {learned}")]
    TreebankSizeMismatch { gold: usize, learned: usize },
    /// A structural invariant was violated; indicates a bug or misuse.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
