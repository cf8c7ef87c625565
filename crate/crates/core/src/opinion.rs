//! Lexicon-based opinion scoring.
//!
//! Messages are tokenized by lowercasing and splitting on non-alphanumeric
//! runs; each token found in the [`Lexicon`] contributes its
//! (positive, negative, objective) weights, unknown tokens count as fully
//! objective, and the message score is the per-component mean. Per-user
//! opinion is the unweighted mean over the user's message scores, yielding
//! the probability distribution over {Pos, Neg, Obj} that drives
//! positive-influence computation.

use std::collections::HashMap;
use std::io::BufRead;

use thiserror::Error;

use crate::scalar::{real, Real};

#[derive(Debug, Error, PartialEq)]
pub enum OpinionError {
    #[error("distribution components must be non-negative, got ({0}, {1}, {2})")]
    NegativeComponent(f64, f64, f64),
    #[error("distribution components sum to {0}, expected 1")]
    SumNotOne(f64),
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("failed to read lexicon: {0}")]
    Io(#[from] std::io::Error),
    #[error("lexicon line {line}: expected `token<TAB>pos<TAB>neg`, found {found} fields")]
    FieldCount { line: usize, found: usize },
    #[error("lexicon line {line}: empty token")]
    EmptyToken { line: usize },
    #[error("lexicon line {line}: invalid score `{value}`")]
    BadScore { line: usize, value: String },
    #[error("lexicon line {line}: score {value} outside [0, 1]")]
    ScoreOutOfRange { line: usize, value: f64 },
    #[error("lexicon line {line}: pos + neg = {sum} exceeds 1")]
    PolarityExceedsOne { line: usize, sum: f64 },
}

fn as_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Probability distribution over the opinion frame Θ = {Pos, Neg, Obj}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OpinionDistribution<T: Real> {
    pub p_pos: T,
    pub p_neg: T,
    pub p_obj: T,
}

impl<T: Real> OpinionDistribution<T> {
    /// Validating constructor: components non-negative, summing to one.
    pub fn new(p_pos: T, p_neg: T, p_obj: T) -> Result<Self, OpinionError> {
        if p_pos < T::zero() || p_neg < T::zero() || p_obj < T::zero() {
            return Err(OpinionError::NegativeComponent(
                as_f64(p_pos),
                as_f64(p_neg),
                as_f64(p_obj),
            ));
        }
        let total = p_pos + p_neg + p_obj;
        if (total - T::one()).abs() > T::SUM_TOL {
            return Err(OpinionError::SumNotOne(as_f64(total)));
        }
        Ok(OpinionDistribution {
            p_pos,
            p_neg,
            p_obj,
        })
    }

    /// Fully objective distribution: the default for silent users and
    /// messages without lexicon hits.
    pub fn objective() -> Self {
        OpinionDistribution {
            p_pos: T::zero(),
            p_neg: T::zero(),
            p_obj: T::one(),
        }
    }

    /// Fully positive distribution (useful in fixtures).
    pub fn positive() -> Self {
        OpinionDistribution {
            p_pos: T::one(),
            p_neg: T::zero(),
            p_obj: T::zero(),
        }
    }
}

/// Sentiment lexicon: lowercase token → (positive, negative) weights with
/// `pos + neg ≤ 1`; the residual is objectivity.
#[derive(Clone, Debug, Default)]
pub struct Lexicon<T: Real> {
    entries: HashMap<String, (T, T)>,
}

impl<T: Real> Lexicon<T> {
    pub fn new() -> Self {
        Lexicon {
            entries: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, token: &str) -> Option<(T, T)> {
        self.entries.get(token).copied()
    }

    /// Inserts an entry, replacing any previous scores for the token.
    pub fn insert(&mut self, token: &str, pos: T, neg: T) -> Result<(), LexiconError> {
        validate_scores(pos, neg, 0)?;
        self.entries.insert(token.to_lowercase(), (pos, neg));
        Ok(())
    }

    /// Parses the TSV lexicon format: `token<TAB>pos<TAB>neg` per line,
    /// `#`-prefixed and blank lines skipped, duplicate tokens last-wins.
    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self, LexiconError> {
        let mut lexicon = Lexicon::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let line_no = idx + 1;
            let trimmed = line.trim_end_matches(['\r', '\n']);
            if trimmed.trim().is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split('\t').collect();
            if fields.len() != 3 {
                return Err(LexiconError::FieldCount {
                    line: line_no,
                    found: fields.len(),
                });
            }
            let token = fields[0].trim();
            if token.is_empty() {
                return Err(LexiconError::EmptyToken { line: line_no });
            }
            let pos = parse_score::<T>(fields[1], line_no)?;
            let neg = parse_score::<T>(fields[2], line_no)?;
            validate_scores(pos, neg, line_no)?;
            lexicon.entries.insert(token.to_lowercase(), (pos, neg));
        }
        Ok(lexicon)
    }

    pub fn from_tsv_str(text: &str) -> Result<Self, LexiconError> {
        Lexicon::from_reader(text.as_bytes())
    }
}

fn parse_score<T: Real>(field: &str, line: usize) -> Result<T, LexiconError> {
    let raw: f64 = field.trim().parse().map_err(|_| LexiconError::BadScore {
        line,
        value: field.trim().to_string(),
    })?;
    if !(0.0..=1.0).contains(&raw) {
        return Err(LexiconError::ScoreOutOfRange { line, value: raw });
    }
    Ok(real(raw))
}

fn validate_scores<T: Real>(pos: T, neg: T, line: usize) -> Result<(), LexiconError> {
    if pos < T::zero() || pos > T::one() {
        return Err(LexiconError::ScoreOutOfRange {
            line,
            value: as_f64(pos),
        });
    }
    if neg < T::zero() || neg > T::one() {
        return Err(LexiconError::ScoreOutOfRange {
            line,
            value: as_f64(neg),
        });
    }
    if pos + neg > T::one() + T::SUM_TOL {
        return Err(LexiconError::PolarityExceedsOne {
            line,
            sum: as_f64(pos + neg),
        });
    }
    Ok(())
}

/// Lowercases `text` and splits it on runs of non-alphanumeric characters.
pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

/// Scores one message: per-token (pos, neg, obj) contributions averaged over
/// the token count. Tokens missing from the lexicon contribute (0, 0, 1);
/// blank text returns the objective distribution.
pub fn score_message<T: Real>(text: &str, lexicon: &Lexicon<T>) -> OpinionDistribution<T> {
    let tokens = tokenize(text);
    if tokens.is_empty() {
        return OpinionDistribution::objective();
    }
    let mut pos = T::zero();
    let mut neg = T::zero();
    let mut obj = T::zero();
    for token in &tokens {
        match lexicon.get(token) {
            Some((p, n)) => {
                pos += p;
                neg += n;
                obj += T::one() - p - n;
            }
            None => obj += T::one(),
        }
    }
    let count = real::<T>(tokens.len() as f64);
    OpinionDistribution {
        p_pos: pos / count,
        p_neg: neg / count,
        p_obj: obj / count,
    }
}

/// Aggregates message-level distributions into the user-level distribution:
/// component-wise mean, defaulting to fully objective for silent users.
pub fn user_opinion<T: Real>(messages: &[OpinionDistribution<T>]) -> OpinionDistribution<T> {
    if messages.is_empty() {
        return OpinionDistribution::objective();
    }
    let mut pos = T::zero();
    let mut neg = T::zero();
    let mut obj = T::zero();
    for m in messages {
        pos += m.p_pos;
        neg += m.p_neg;
        obj += m.p_obj;
    }
    let count = real::<T>(messages.len() as f64);
    OpinionDistribution {
        p_pos: pos / count,
        p_neg: neg / count,
        p_obj: obj / count,
    }
}
