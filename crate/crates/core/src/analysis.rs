//! Corpus-level measurements built on the activation matrix: scoped ranks,
//! cumulative union ranks, dark-endpoint audits, extended-pattern ablation
//! and dependency refutation checks.

use std::collections::BTreeSet;
use std::fmt;

use crate::dimension::{ActivationVector, Dimension, DIMENSION_COUNT};
use crate::gf2::{self, ActivationMatrix, DependencyCertificate, RowLabel, SectionWitness};
use crate::ingest::Endpoint;
use crate::patterns::{activate_corpus, PatternSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("unknown corpus label `{0}`")]
    UnknownCorpus(String),
    #[error("corpus label `{0}` appears twice in the order")]
    RepeatedCorpus(String),
    #[error("corpus order is empty")]
    EmptyOrder,
}

/// The loaded corpora: their labels (including any that produced no
/// endpoints) and every endpoint in deterministic order.
#[derive(Debug, Clone, Default)]
pub struct Run {
    labels: Vec<String>,
    endpoints: Vec<Endpoint>,
}

impl Run {
    pub fn new(labels: Vec<String>, endpoints: Vec<Endpoint>) -> Self {
        let mut labels = labels;
        for ep in &endpoints {
            if !labels.contains(&ep.corpus_label) {
                labels.push(ep.corpus_label.clone());
            }
        }
        Run { labels, endpoints }
    }

    pub fn from_endpoints(endpoints: Vec<Endpoint>) -> Self {
        Run::new(Vec::new(), endpoints)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn endpoints(&self) -> &[Endpoint] {
        &self.endpoints
    }

    pub fn matrix(&self, patterns: &PatternSet, use_extended: bool) -> ActivationMatrix {
        activate_corpus(&self.endpoints, patterns, use_extended)
    }

    fn check(&self, label: &str) -> Result<(), AnalysisError> {
        if self.labels.iter().any(|l| l == label) {
            Ok(())
        } else {
            Err(AnalysisError::UnknownCorpus(label.to_string()))
        }
    }
}

/// A set of corpus labels; empty selects every corpus.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScopeFilter {
    pub corpus_labels: BTreeSet<String>,
}

impl ScopeFilter {
    pub fn all() -> Self {
        ScopeFilter::default()
    }

    pub fn of<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        ScopeFilter {
            corpus_labels: labels.into_iter().map(Into::into).collect(),
        }
    }

    /// Parses `OBIE,CDR`.
    pub fn parse(list: &str) -> Self {
        ScopeFilter::of(list.split(',').map(str::trim).filter(|s| !s.is_empty()))
    }

    pub fn validate(&self, run: &Run) -> Result<(), AnalysisError> {
        self.corpus_labels.iter().try_for_each(|l| run.check(l))
    }

    pub fn apply(&self, matrix: &ActivationMatrix) -> ActivationMatrix {
        matrix.restrict_to(&self.corpus_labels)
    }
}

impl fmt::Display for ScopeFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.corpus_labels.is_empty() {
            f.write_str("all")
        } else {
            let labels: Vec<&str> = self.corpus_labels.iter().map(String::as_str).collect();
            f.write_str(&labels.join("+"))
        }
    }
}

/// Identifies the pattern configuration a report was computed under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternConfig {
    pub digest: String,
    pub use_extended: bool,
    pub dialect_version: String,
}

impl PatternConfig {
    pub fn of(patterns: &PatternSet, use_extended: bool) -> Self {
        PatternConfig {
            digest: patterns.digest(),
            use_extended,
            dialect_version: patterns.dialect_version().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    pub scope: ScopeFilter,
    pub endpoint_count: usize,
    pub dark_count: usize,
    pub activated_dimensions: ActivationVector,
    pub rank: usize,
    pub pivot_columns: Vec<Dimension>,
    pub certificates: Vec<DependencyCertificate>,
    pub pure_signal_witness: SectionWitness,
    pub pattern_config: Option<PatternConfig>,
}

impl RankReport {
    /// Builds a report from an already scoped matrix.
    pub fn from_matrix(scope: ScopeFilter, matrix: &ActivationMatrix) -> Self {
        let reduced = gf2::rank(matrix);
        let certificates = gf2::nullspace_in_scope(matrix, &scope.to_string());
        RankReport {
            endpoint_count: matrix.len(),
            dark_count: matrix.dark_rows().count(),
            activated_dimensions: matrix.activated(),
            rank: reduced.rank,
            pivot_columns: reduced.pivot_columns,
            certificates,
            pure_signal_witness: gf2::pure_signals(matrix),
            pattern_config: None,
            scope,
        }
    }

    pub fn activated_count(&self) -> usize {
        self.activated_dimensions.weight() as usize
    }

    /// True when no dependency exists among the activated columns.
    pub fn is_independent(&self) -> bool {
        self.rank == self.activated_count()
    }

    pub fn dark_pct(&self) -> f64 {
        percent(self.dark_count, self.endpoint_count)
    }
}

pub(crate) fn percent(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        0.0
    } else {
        100.0 * part as f64 / whole as f64
    }
}

/// Rank report for the rows of `scope`.
pub fn rank_report(
    run: &Run,
    patterns: &PatternSet,
    scope: &ScopeFilter,
    use_extended: bool,
) -> Result<RankReport, AnalysisError> {
    scope.validate(run)?;
    let matrix = scope.apply(&run.matrix(patterns, use_extended));
    let mut report = RankReport::from_matrix(scope.clone(), &matrix);
    report.pattern_config = Some(PatternConfig::of(patterns, use_extended));
    Ok(report)
}

/// One step of a cumulative union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CumulativeStep {
    pub prefix: Vec<String>,
    pub rank: usize,
}

/// Rank of each prefix union of `order`.
pub fn cumulative_ranks(
    run: &Run,
    patterns: &PatternSet,
    order: &[String],
    use_extended: bool,
) -> Result<Vec<CumulativeStep>, AnalysisError> {
    if order.is_empty() {
        return Err(AnalysisError::EmptyOrder);
    }
    for (i, label) in order.iter().enumerate() {
        run.check(label)?;
        if order[..i].contains(label) {
            return Err(AnalysisError::RepeatedCorpus(label.clone()));
        }
    }
    Ok(cumulative_ranks_of(
        &run.matrix(patterns, use_extended),
        order,
    ))
}

/// Prefix-union ranks over an existing matrix.
pub fn cumulative_ranks_of(matrix: &ActivationMatrix, order: &[String]) -> Vec<CumulativeStep> {
    (1..=order.len())
        .map(|n| {
            let prefix = order[..n].to_vec();
            let scope = ScopeFilter::of(prefix.iter().cloned());
            CumulativeStep {
                rank: gf2::rank(&scope.apply(matrix)).rank,
                prefix,
            }
        })
        .collect()
}

/// Endpoints activating no dimension, in row order.
pub fn dark_endpoints(
    run: &Run,
    patterns: &PatternSet,
    scope: &ScopeFilter,
    use_extended: bool,
) -> Result<Vec<RowLabel>, AnalysisError> {
    scope.validate(run)?;
    let matrix = scope.apply(&run.matrix(patterns, use_extended));
    Ok(matrix.dark_rows().cloned().collect())
}

/// Frozen-only against frozen+extended over one scope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AblationReport {
    pub scope: ScopeFilter,
    pub endpoint_count: usize,
    pub rank_frozen: usize,
    pub rank_extended: usize,
    pub coverage_frozen: [usize; DIMENSION_COUNT],
    pub coverage_extended: [usize; DIMENSION_COUNT],
    pub dark_frozen: usize,
    pub dark_extended: usize,
}

impl AblationReport {
    /// False means the extended tier changed a rank, refuting its claimed
    /// coverage-only role for this pattern set.
    pub fn rank_preserved(&self) -> bool {
        self.rank_frozen == self.rank_extended
    }

    /// Share of endpoints activating at least one dimension, frozen only.
    pub fn covered_pct_frozen(&self) -> f64 {
        percent(self.endpoint_count - self.dark_frozen, self.endpoint_count)
    }

    pub fn covered_pct_extended(&self) -> f64 {
        percent(
            self.endpoint_count - self.dark_extended,
            self.endpoint_count,
        )
    }
}

pub fn ablation(
    run: &Run,
    patterns: &PatternSet,
    scope: &ScopeFilter,
) -> Result<AblationReport, AnalysisError> {
    scope.validate(run)?;
    let frozen = scope.apply(&run.matrix(patterns, false));
    let extended = scope.apply(&run.matrix(patterns, true));
    Ok(ablation_of(scope.clone(), &frozen, &extended))
}

pub fn ablation_of(
    scope: ScopeFilter,
    frozen: &ActivationMatrix,
    extended: &ActivationMatrix,
) -> AblationReport {
    AblationReport {
        scope,
        endpoint_count: frozen.len(),
        rank_frozen: gf2::rank(frozen).rank,
        rank_extended: gf2::rank(extended).rank,
        coverage_frozen: frozen.column_counts(),
        coverage_extended: extended.column_counts(),
        dark_frozen: frozen.dark_rows().count(),
        dark_extended: extended.dark_rows().count(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    /// The candidate names no columns.
    Vacuous,
    /// This row has odd parity over the candidate columns.
    ViolatingRow { index: usize, label: RowLabel },
    /// Columns that never fire in scope cannot carry a dependency.
    InactiveColumns(Vec<Dimension>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Confirmed(DependencyCertificate),
    Rejected(Rejection),
}

impl Verdict {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, Verdict::Confirmed(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Confirmed(cert) => write!(f, "CONFIRMED {cert}"),
            Verdict::Rejected(Rejection::Vacuous) => f.write_str("REJECTED empty column set"),
            Verdict::Rejected(Rejection::ViolatingRow { label, .. }) => {
                write!(f, "REJECTED violated by {label}")
            }
            Verdict::Rejected(Rejection::InactiveColumns(dims)) => {
                let dims: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
                write!(f, "REJECTED inactive in scope: {}", dims.join(","))
            }
        }
    }
}

/// Checks a claimed dependency over a scoped matrix: confirmed iff every
/// row has even parity over the columns and each column fires somewhere.
pub fn refute(matrix: &ActivationMatrix, scope: &ScopeFilter, candidate: &[Dimension]) -> Verdict {
    let columns = ActivationVector::from_dims(candidate.iter().copied());
    if columns.is_zero() {
        return Verdict::Rejected(Rejection::Vacuous);
    }
    if let Some(index) = gf2::first_violation(matrix, columns) {
        return Verdict::Rejected(Rejection::ViolatingRow {
            index,
            label: matrix.labels()[index].clone(),
        });
    }
    let inactive: Vec<Dimension> = (columns & !matrix.activated()).dims().collect();
    if !inactive.is_empty() {
        return Verdict::Rejected(Rejection::InactiveColumns(inactive));
    }
    let mut cert = DependencyCertificate::new(columns, scope.to_string());
    cert.witness_rows = matrix
        .iter()
        .filter(|(_, r)| !(*r & columns).is_zero())
        .map(|(l, _)| l.clone())
        .collect();
    Verdict::Confirmed(cert)
}
