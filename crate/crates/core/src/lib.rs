//! Semantic activation and GF(2) rank analysis for OpenAPI corpora.
//!
//! The pipeline has three stages:
//!
//! 1. [`ingest`] turns every `(path, method)` operation of an OpenAPI 3
//!    document into an [`Endpoint`] carrying a lowercased semantic signal.
//! 2. [`patterns`] matches each signal against a fourteen-rule frozen pattern
//!    set (plus optional synonym rules) to get an [`ActivationVector`].
//! 3. [`gf2`] computes rank, nullspace certificates and pure-signal
//!    witnesses of the resulting [`ActivationMatrix`]; [`analysis`] scopes
//!    those measurements to corpora and compares pattern configurations.

pub mod analysis;
pub mod cli;
pub mod dimension;
pub mod exec;
pub mod gf2;
pub mod ingest;
pub mod patterns;
pub mod report;
pub mod tsv;

pub use analysis::{
    ablation, cumulative_ranks, dark_endpoints, rank_report, refute, AblationReport, RankReport,
    Run, ScopeFilter, Verdict,
};
pub use dimension::{ActivationVector, Dimension, DIMENSION_COUNT};
pub use exec::Execution;
pub use gf2::{
    expose_identity, nullspace, pure_signals, rank, ActivationMatrix, DependencyCertificate,
    RankResult, RowLabel, SectionWitness,
};
pub use ingest::{load_corpus, CorpusManifest, Endpoint, SignalOptions};
pub use patterns::{activate_corpus, match_endpoint, PatternSet};
