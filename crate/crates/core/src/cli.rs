//! Command-line front end.
//!
//! Exit codes: 0 success with no dependency found, 3 a dependency
//! certificate exists, 2 usage or configuration error, 1 internal error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::{self, AnalysisError, RankReport, Run, ScopeFilter};
use crate::dimension::Dimension;
use crate::exec::Execution;
use crate::gf2;
use crate::ingest::{self, CorpusManifest, IngestError, SignalOptions};
use crate::patterns::{PatternError, PatternSet};
use crate::report::{self, OutputFormat};
use crate::tsv;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEPENDENCY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "quotient",
    version,
    about = "Semantic activation and GF(2) rank analysis of OpenAPI corpora"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the per-endpoint activation TSV.
    Activate(Common),
    /// Rank, pivots, dependencies and pure-signal coverage for a scope.
    Rank {
        #[command(flatten)]
        common: Common,
        /// Also print prefix-union ranks in this corpus order.
        #[arg(long, value_name = "LABELS")]
        order: Option<String>,
    },
    /// List endpoints that activate no dimension.
    Dark(Common),
    /// Pure-signal witnesses and, when complete, the identity block.
    Pure(Common),
    /// Dependency certificates, or check a claimed dependency.
    Deps {
        #[command(flatten)]
        common: Common,
        /// Columns of a claimed dependency, e.g. `Y,A,C,B`.
        #[arg(long, value_name = "COLS")]
        check: Option<String>,
    },
    /// Compare frozen-only against frozen+extended patterns.
    Ablate(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Corpus source as `label=path`; repeatable.
    #[arg(long = "corpus", value_name = "LABEL=PATH")]
    pub corpora: Vec<String>,
    /// Manifest file of `label = path` lines.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Pattern file; defaults to the built-in reconstructed set.
    #[arg(long, env = "QUOTIENT_PATTERNS")]
    pub patterns: Option<PathBuf>,
    /// Apply extended synonym rules (default).
    #[arg(long, overrides_with = "no_extended")]
    pub extended: bool,
    /// Frozen rules only.
    #[arg(long, overrides_with = "extended")]
    pub no_extended: bool,
    /// Comma-separated corpus labels; default is every corpus.
    #[arg(long, value_name = "LABELS")]
    pub scope: Option<String>,
    /// Output file; default is standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// tsv, text or kv.
    #[arg(long)]
    pub format: Option<OutputFormat>,
    /// Keep camelCase words fused instead of splitting them with `_`.
    #[arg(long)]
    pub no_camel_split: bool,
    /// Count allOf/anyOf/oneOf as a schema depth level.
    #[arg(long)]
    pub combinators_consume_depth: bool,
}

/// Validated configuration shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub corpora: Vec<CorpusManifest>,
    pub pattern_path: Option<PathBuf>,
    pub use_extended: bool,
    pub scope: ScopeFilter,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub signal: SignalOptions,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("cannot write {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Analysis(_) => EXIT_USAGE,
            _ => EXIT_INTERNAL,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl Common {
    /// Resolves and checks every path before any computation.
    pub fn resolve(&self, default_format: OutputFormat) -> Result<RunConfig, CliError> {
        let mut corpora: Vec<CorpusManifest> = Vec::new();
        if let Some(m) = &self.manifest {
            if !m.is_file() {
                return Err(usage(format!("manifest {} does not exist", m.display())));
            }
            corpora = ingest::read_manifest(m)?;
        }
        for spec in &self.corpora {
            let (label, path) = spec
                .split_once('=')
                .ok_or_else(|| usage(format!("--corpus expects LABEL=PATH, got `{spec}`")))?;
            let (label, path) = (label.trim(), PathBuf::from(path.trim()));
            if label.is_empty() {
                return Err(usage("--corpus label is empty"));
            }
            match corpora.iter_mut().find(|c| c.corpus_label == label) {
                Some(c) => c.source_paths.push(path),
                None => corpora.push(CorpusManifest::new(label, vec![path])),
            }
        }
        if corpora.is_empty() {
            return Err(usage(
                "no corpus given; use --corpus LABEL=PATH or --manifest FILE",
            ));
        }
        for c in &corpora {
            for p in &c.source_paths {
                if !p.exists() {
                    return Err(usage(format!(
                        "corpus {}: source {} does not exist",
                        c.corpus_label,
                        p.display()
                    )));
                }
            }
        }
        if let Some(p) = &self.patterns {
            if !p.is_file() {
                return Err(usage(format!(
                    "pattern file {} does not exist",
                    p.display()
                )));
            }
        }
        if let Some(out) = &self.out {
            let parent = out.parent().filter(|p| !p.as_os_str().is_empty());
            if parent.is_some_and(|p| !p.is_dir()) {
                return Err(usage(format!(
                    "output directory for {} does not exist",
                    out.display()
                )));
            }
        }
        Ok(RunConfig {
            corpora,
            pattern_path: self.patterns.clone(),
            use_extended: !self.no_extended,
            scope: self
                .scope
                .as_deref()
                .map(ScopeFilter::parse)
                .unwrap_or_default(),
            output_path: self.out.clone(),
            output_format: self.format.unwrap_or(default_format),
            signal: SignalOptions {
                split_camel_case: !self.no_camel_split,
                combinators_consume_depth: self.combinators_consume_depth,
            },
        })
    }
}

impl RunConfig {
    pub fn load_patterns(&self) -> Result<PatternSet, CliError> {
        match &self.pattern_path {
            Some(p) => Ok(PatternSet::load(p)?),
            None => Ok(PatternSet::default_set()),
        }
    }

    pub fn load_run(&self) -> Result<Run, CliError> {
        let endpoints = ingest::load_run(&self.corpora, &self.signal, Execution::default())?;
        let labels = self
            .corpora
            .iter()
            .map(|c| c.corpus_label.clone())
            .collect();
        let run = Run::new(labels, endpoints);
        self.scope.validate(&run)?;
        Ok(run)
    }

    fn emit(&self, content: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
        match &self.output_path {
            Some(path) => fs::write(path, content).map_err(|source| CliError::Output {
                path: path.display().to_string(),
                source,
            }),
            None => stdout
                .write_all(content.as_bytes())
                .map_err(|source| CliError::Output {
                    path: "<stdout>".into(),
                    source,
                }),
        }
    }
}

fn parse_order(order: &str) -> Vec<String> {
    order
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// Runs one invocation, returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Activate(common) => {
            let cfg = common.resolve(OutputFormat::Tsv)?;
            if cfg.output_format != OutputFormat::Tsv {
                return Err(usage("activate only writes tsv"));
            }
            let patterns = cfg.load_patterns()?;
            let run = cfg.load_run()?;
            let matrix = cfg.scope.apply(&run.matrix(&patterns, cfg.use_extended));
            cfg.emit(&tsv::to_tsv_string(&matrix), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Rank { common, order } => {
            let cfg = common.resolve(OutputFormat::Text)?;
            let patterns = cfg.load_patterns()?;
            let run = cfg.load_run()?;
            let report = analysis::rank_report(&run, &patterns, &cfg.scope, cfg.use_extended)?;
            let mut text = report::render_rank_report(&report, cfg.output_format);
            if let Some(order) = order {
                let steps = analysis::cumulative_ranks(
                    &run,
                    &patterns,
                    &parse_order(order),
                    cfg.use_extended,
                )?;
                text.push_str(&report::render_cumulative(&steps, cfg.output_format));
            }
            cfg.emit(&text, stdout)?;
            Ok(dependency_code(&report))
        }
        Command::Dark(common) => {
            let cfg = common.resolve(OutputFormat::Text)?;
            let patterns = cfg.load_patterns()?;
            let run = cfg.load_run()?;
            let matrix = cfg.scope.apply(&run.matrix(&patterns, cfg.use_extended));
            let dark: Vec<_> = matrix.dark_rows().cloned().collect();
            cfg.emit(
                &report::render_dark(&dark, matrix.len(), cfg.output_format),
                stdout,
            )?;
            Ok(EXIT_OK)
        }
        Command::Pure(common) => {
            let cfg = common.resolve(OutputFormat::Text)?;
            let patterns = cfg.load_patterns()?;
            let run = cfg.load_run()?;
            let matrix = cfg.scope.apply(&run.matrix(&patterns, cfg.use_extended));
            let witness = gf2::pure_signals(&matrix);
            let view = gf2::expose_identity(&matrix, &witness).ok();
            cfg.emit(
                &report::render_witness(&witness, view.as_ref(), cfg.output_format),
                stdout,
            )?;
            Ok(EXIT_OK)
        }
        Command::Deps { common, check } => {
            let cfg = common.resolve(OutputFormat::Text)?;
            let candidate = match check {
                Some(cols) => {
                    Some(Dimension::parse_list(cols).map_err(|e| usage(format!("--check: {e}")))?)
                }
                None => None,
            };
            let patterns = cfg.load_patterns()?;
            let run = cfg.load_run()?;
            let matrix = cfg.scope.apply(&run.matrix(&patterns, cfg.use_extended));
            match candidate {
                Some(cols) => {
                    let verdict = analysis::refute(&matrix, &cfg.scope, &cols);
                    cfg.emit(&report::render_verdict(&verdict, cfg.output_format), stdout)?;
                    Ok(if verdict.is_confirmed() {
                        EXIT_DEPENDENCY
                    } else {
                        EXIT_OK
                    })
                }
                None => {
                    let certs = gf2::nullspace_in_scope(&matrix, &cfg.scope.to_string());
                    cfg.emit(
                        &report::render_certificates(&certs, cfg.output_format),
                        stdout,
                    )?;
                    Ok(if certs.is_empty() {
                        EXIT_OK
                    } else {
                        EXIT_DEPENDENCY
                    })
                }
            }
        }
        Command::Ablate(common) => {
            let cfg = common.resolve(OutputFormat::Text)?;
            let patterns = cfg.load_patterns()?;
            let run = cfg.load_run()?;
            let report = analysis::ablation(&run, &patterns, &cfg.scope)?;
            cfg.emit(&report::render_ablation(&report, cfg.output_format), stdout)?;
            Ok(EXIT_OK)
        }
    }
}

fn dependency_code(report: &RankReport) -> i32 {
    if report.is_independent() {
        EXIT_OK
    } else {
        EXIT_DEPENDENCY
    }
}

/// Convenience for callers holding a path list rather than flags.
pub fn corpus_arg(label: &str, path: &Path) -> String {
    format!("{label}={}", path.display())
}
