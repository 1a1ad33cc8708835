//! Pattern sets and endpoint activation.
//!
//! A pattern file is line-oriented, one rule per line:
//!
//! ```text
//! # comment
//! SYMBOL<TAB>TIER<TAB>EXPRESSION<TAB>NOTE
//! ```
//!
//! `TIER` is `frozen` or `extended`. The frozen tier holds exactly one rule
//! per dimension; extended rules add synonyms for an existing dimension and
//! never a new column. Expressions use the `regex` crate syntax without
//! look-around or backreferences, and match anywhere in the signal.

use std::fmt::{self, Write as _};
use std::path::Path;

use regex::{Regex, RegexSet};
use sha2::{Digest, Sha256};

use crate::dimension::{ActivationVector, Dimension, DIMENSION_COUNT};
use crate::exec::{map_ordered, Execution};
use crate::gf2::{ActivationMatrix, RowLabel};
use crate::ingest::Endpoint;

/// Recorded in every report so results can be tied to the regex semantics
/// that produced them.
pub const DIALECT_VERSION: &str =
    "rust-regex/1 (unanchored search, no look-around, no backreferences)";

/// Reconstructed default pattern set: authored to the published design
/// principles and documented examples, not the canonical expressions.
pub const DEFAULT_PATTERNS: &str = include_str!("../data/default_patterns.tsv");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PatternError {
    #[error("cannot read pattern file {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: expected `SYMBOL<TAB>TIER<TAB>EXPRESSION<TAB>NOTE`")]
    Syntax { line: usize },
    #[error("line {line}: unknown dimension `{symbol}`")]
    UnknownDimension { line: usize, symbol: String },
    #[error("line {line}: unknown tier `{tier}` (expected frozen or extended)")]
    UnknownTier { line: usize, tier: String },
    #[error("line {line}: expression for {dimension} does not compile: {message}")]
    BadExpression {
        line: usize,
        dimension: Dimension,
        message: String,
    },
    #[error("line {line}: duplicate frozen rule for {dimension}")]
    DuplicateFrozen { line: usize, dimension: Dimension },
    #[error("frozen tier has no rule for {}", list(.0))]
    MissingFrozen(Vec<Dimension>),
}

fn list(dims: &[Dimension]) -> String {
    dims.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    Frozen,
    Extended,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Frozen => "frozen",
            Tier::Extended => "extended",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternRule {
    pub dimension: Dimension,
    pub expression: String,
    pub tier: Tier,
    pub note: String,
}

/// A validated, compiled pattern set. Immutable after construction.
#[derive(Debug, Clone)]
pub struct PatternSet {
    frozen: Vec<PatternRule>,
    extended: Vec<PatternRule>,
    dialect_version: String,
    frozen_matcher: RegexSet,
    extended_matcher: RegexSet,
}

impl PartialEq for PatternSet {
    fn eq(&self, other: &Self) -> bool {
        self.frozen == other.frozen
            && self.extended == other.extended
            && self.dialect_version == other.dialect_version
    }
}

impl Eq for PatternSet {}

impl PatternSet {
    /// Validates and compiles a rule list. `lines` gives the source line of
    /// each rule for error reporting.
    fn build(rules: Vec<(usize, PatternRule)>) -> Result<Self, PatternError> {
        let mut frozen: Vec<Option<PatternRule>> = vec![None; DIMENSION_COUNT];
        let mut extended = Vec::new();
        for (line, rule) in rules {
            if let Err(e) = Regex::new(&rule.expression) {
                return Err(PatternError::BadExpression {
                    line,
                    dimension: rule.dimension,
                    message: e.to_string(),
                });
            }
            match rule.tier {
                Tier::Frozen => {
                    let slot = &mut frozen[rule.dimension.index()];
                    if slot.is_some() {
                        return Err(PatternError::DuplicateFrozen {
                            line,
                            dimension: rule.dimension,
                        });
                    }
                    *slot = Some(rule);
                }
                Tier::Extended => extended.push(rule),
            }
        }
        let missing: Vec<Dimension> = Dimension::ALL
            .into_iter()
            .filter(|d| frozen[d.index()].is_none())
            .collect();
        if !missing.is_empty() {
            return Err(PatternError::MissingFrozen(missing));
        }
        let frozen: Vec<PatternRule> = frozen.into_iter().flatten().collect();
        extended.sort_by_key(|r| r.dimension);

        let frozen_matcher = compile(&frozen)?;
        let extended_matcher = compile(&extended)?;
        Ok(PatternSet {
            frozen,
            extended,
            dialect_version: DIALECT_VERSION.to_string(),
            frozen_matcher,
            extended_matcher,
        })
    }

    pub fn from_rules(rules: Vec<PatternRule>) -> Result<Self, PatternError> {
        Self::build(
            rules
                .into_iter()
                .enumerate()
                .map(|(i, r)| (i + 1, r))
                .collect(),
        )
    }

    /// Parses the pattern-file grammar.
    pub fn parse(text: &str) -> Result<Self, PatternError> {
        let mut rules = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim_end_matches('\r');
            if trimmed.trim().is_empty() || trimmed.trim_start().starts_with('#') {
                continue;
            }
            let mut fields = trimmed.splitn(4, '\t');
            let (Some(symbol), Some(tier), Some(expression)) =
                (fields.next(), fields.next(), fields.next())
            else {
                return Err(PatternError::Syntax { line });
            };
            let note = fields.next().unwrap_or("");
            let dimension =
                symbol
                    .trim()
                    .parse::<Dimension>()
                    .map_err(|_| PatternError::UnknownDimension {
                        line,
                        symbol: symbol.trim().to_string(),
                    })?;
            let tier = match tier.trim() {
                "frozen" => Tier::Frozen,
                "extended" => Tier::Extended,
                other => {
                    return Err(PatternError::UnknownTier {
                        line,
                        tier: other.to_string(),
                    })
                }
            };
            if expression.is_empty() {
                return Err(PatternError::Syntax { line });
            }
            rules.push((
                line,
                PatternRule {
                    dimension,
                    expression: expression.to_string(),
                    tier,
                    note: note.to_string(),
                },
            ));
        }
        Self::build(rules)
    }

    pub fn load(path: &Path) -> Result<Self, PatternError> {
        let text = std::fs::read_to_string(path).map_err(|e| PatternError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// The built-in reconstructed set.
    pub fn default_set() -> Self {
        Self::parse(DEFAULT_PATTERNS).expect("built-in pattern set is valid")
    }

    pub fn frozen(&self) -> &[PatternRule] {
        &self.frozen
    }

    pub fn extended(&self) -> &[PatternRule] {
        &self.extended
    }

    pub fn dialect_version(&self) -> &str {
        &self.dialect_version
    }

    pub fn rule(&self, dim: Dimension) -> &PatternRule {
        &self.frozen[dim.index()]
    }

    /// Canonical serialization in the pattern-file grammar.
    pub fn to_file_string(&self) -> String {
        let mut out = String::from("# SYMBOL\tTIER\tEXPRESSION\tNOTE\n");
        for rule in self.frozen.iter().chain(&self.extended) {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}",
                rule.dimension, rule.tier, rule.expression, rule.note
            );
        }
        out
    }

    /// SHA-256 of the canonical serialization, hex-encoded.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_file_string().as_bytes()))
    }

    /// Activation vector for one lowercased signal.
    pub fn match_signal(&self, signal: &str, use_extended: bool) -> ActivationVector {
        let mut bits = ActivationVector::ZERO;
        for i in self.frozen_matcher.matches(signal).iter() {
            bits.set(self.frozen[i].dimension);
        }
        if use_extended && !self.extended.is_empty() {
            for i in self.extended_matcher.matches(signal).iter() {
                bits.set(self.extended[i].dimension);
            }
        }
        bits
    }
}

fn compile(rules: &[PatternRule]) -> Result<RegexSet, PatternError> {
    RegexSet::new(rules.iter().map(|r| r.expression.as_str())).map_err(|e| {
        PatternError::BadExpression {
            line: 0,
            dimension: rules.first().map_or(Dimension::A, |r| r.dimension),
            message: e.to_string(),
        }
    })
}

pub fn match_endpoint(signal: &str, patterns: &PatternSet, use_extended: bool) -> ActivationVector {
    patterns.match_signal(signal, use_extended)
}

/// Builds the activation matrix for `endpoints`, one row per endpoint in
/// input order.
pub fn activate_corpus(
    endpoints: &[Endpoint],
    patterns: &PatternSet,
    use_extended: bool,
) -> ActivationMatrix {
    activate_corpus_with(endpoints, patterns, use_extended, Execution::default())
}

pub fn activate_corpus_with(
    endpoints: &[Endpoint],
    patterns: &PatternSet,
    use_extended: bool,
    exec: Execution,
) -> ActivationMatrix {
    let rows = map_ordered(exec, endpoints, |ep| {
        patterns.match_signal(&ep.signal, use_extended)
    });
    let labels = endpoints
        .iter()
        .map(|ep| RowLabel::new(&ep.corpus_label, &ep.endpoint_id))
        .collect();
    ActivationMatrix::from_parts(rows, labels)
}
