//! Plain-text corpora: sentences as ordered token sequences.

use std::fmt;

use crate::error::{Error, Result};

/// A single word. Tokens are non-empty and contain neither whitespace nor
/// parentheses (parentheses are reserved by the bracket format).
pub type Token = String;

fn check_token(line: usize, tok: &str) -> Result<()> {
    if tok.is_empty() {
        return Err(Error::format(line, "empty token"));
    }
    if tok.chars().any(|c| c.is_whitespace() || c == '(' || c == ')') {
        return Err(Error::format(
            line,
            format!("token {tok:?} contains whitespace or parentheses"),
        ));
    }
    Ok(())
}

/// A non-empty ordered sequence of words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sentence {
    tokens: Vec<Token>,
}

impl Sentence {
    pub fn new(tokens: Vec<Token>) -> Result<Self> {
        Self::checked(0, tokens)
    }

    fn checked(line: usize, tokens: Vec<Token>) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::format(line, "a sentence must have at least one token"));
        }
        for tok in &tokens {
            check_token(line, tok)?;
        }
        Ok(Sentence { tokens })
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        false // sentences are non-empty by construction
    }

    /// Lowercase every token (used to reproduce case-insensitive matching).
    pub fn case_folded(&self) -> Sentence {
        Sentence {
            tokens: self.tokens.iter().map(|t| t.to_lowercase()).collect(),
        }
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tokens.join(" "))
    }
}

impl std::str::FromStr for Sentence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Sentence::checked(0, s.split_whitespace().map(str::to_owned).collect())
    }
}

/// An ordered list of sentences. Order is significant: the order-dependent
/// learning instances process sentences front to back.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    sentences: Vec<Sentence>,
}

impl Corpus {
    pub fn new(sentences: Vec<Sentence>) -> Self {
        Corpus { sentences }
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn case_folded(&self) -> Corpus {
        Corpus {
            sentences: self.sentences.iter().map(Sentence::case_folded).collect(),
        }
    }

    /// Keep the first `n` sentences.
    pub fn prefix(&self, n: usize) -> Corpus {
        Corpus {
            sentences: self.sentences[..n.min(self.sentences.len())].to_vec(),
        }
    }

    pub fn to_plain_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sentences {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }
}

/// Parse a plain corpus: one sentence per line, tokens separated by runs of
/// spaces. Returns the corpus together with the number of skipped
/// whitespace-only lines (callers may warn about those). Empty lines are
/// skipped silently.
pub fn parse_plain_corpus(text: &str) -> Result<(Corpus, usize)> {
    let mut sentences = Vec::new();
    let mut skipped = 0usize;
    for (idx, line) in text.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<Token> = line.split_whitespace().map(str::to_owned).collect();
        if tokens.is_empty() {
            skipped += 1;
            continue;
        }
        sentences.push(Sentence::checked(idx + 1, tokens)?);
    }
    Ok((Corpus::new(sentences), skipped))
}
