//! Plain-text and key/value rendering of analysis results.
//!
//! The key/value form is one `key<TAB>value` pair per line, stable in order,
//! so it can be diffed or fed to other tools.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::analysis::{percent, AblationReport, CumulativeStep, RankReport, Verdict};
use crate::dimension::{ActivationVector, Dimension};
use crate::gf2::{DependencyCertificate, IdentityView, RowLabel, SectionWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Tsv,
    Text,
    Kv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(OutputFormat::Tsv),
            "text" => Ok(OutputFormat::Text),
            "kv" => Ok(OutputFormat::Kv),
            other => Err(format!(
                "unknown format `{other}` (expected tsv, text or kv)"
            )),
        }
    }
}

struct Out {
    kv: bool,
    buf: String,
}

impl Out {
    fn new(format: OutputFormat) -> Self {
        Out {
            kv: format != OutputFormat::Text,
            buf: String::new(),
        }
    }

    /// Text form pads the key; kv form separates with a tab.
    fn field(&mut self, key: &str, value: impl std::fmt::Display) {
        if self.kv {
            let _ = writeln!(self.buf, "{key}\t{value}");
        } else {
            let _ = writeln!(self.buf, "{:<18}{value}", key.replace('_', " "));
        }
    }

    fn line(&mut self, s: impl std::fmt::Display) {
        let _ = writeln!(self.buf, "{s}");
    }
}

fn symbols(v: ActivationVector) -> String {
    v.dims()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn dims_list(dims: &[Dimension]) -> String {
    dims.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn pct(part: usize, whole: usize) -> String {
    format!("{:.1}", percent(part, whole))
}

fn certificate_value(c: &DependencyCertificate) -> String {
    format!("{}\t{}", symbols(c.columns), c.render())
}

pub fn render_rank_report(report: &RankReport, format: OutputFormat) -> String {
    let mut o = Out::new(format);
    o.field("scope", &report.scope);
    o.field("endpoint_count", report.endpoint_count);
    if o.kv {
        o.field("dark_count", report.dark_count);
        o.field("dark_pct", pct(report.dark_count, report.endpoint_count));
        o.field("activated_dimensions", symbols(report.activated_dimensions));
        o.field("activated_count", report.activated_count());
        o.field("rank", report.rank);
        o.field("pivot_columns", dims_list(&report.pivot_columns));
        for c in &report.certificates {
            o.field("certificate", certificate_value(c));
        }
        for (d, l) in report.pure_signal_witness.assignments() {
            o.field(&format!("pure_signal.{d}"), l);
        }
        o.field(
            "pure_signal_missing",
            dims_list(&report.pure_signal_witness.missing()),
        );
    } else {
        o.field(
            "dark",
            format!(
                "{} ({}%)",
                report.dark_count,
                pct(report.dark_count, report.endpoint_count)
            ),
        );
        o.field(
            "activated",
            format!(
                "{} {{{}}}",
                report.activated_count(),
                symbols(report.activated_dimensions)
            ),
        );
        o.field("rank", report.rank);
        o.field("pivots", dims_list(&report.pivot_columns));
        if report.certificates.is_empty() {
            o.field("dependencies", "none");
        } else {
            for c in &report.certificates {
                o.field(
                    "dependency",
                    format!("{}   ({} rows involved)", c.render(), c.witness_rows.len()),
                );
            }
        }
        let w = &report.pure_signal_witness;
        let missing = w.missing();
        if missing.is_empty() {
            o.field("pure signals", format!("{}/14", w.len()));
        } else {
            o.field(
                "pure signals",
                format!("{}/14 (missing {})", w.len(), dims_list(&missing)),
            );
        }
    }
    if let Some(cfg) = &report.pattern_config {
        o.field("pattern_digest", format!("sha256:{}", cfg.digest));
        o.field("use_extended", cfg.use_extended);
        o.field("dialect_version", &cfg.dialect_version);
    }
    o.buf
}

pub fn render_cumulative(steps: &[CumulativeStep], format: OutputFormat) -> String {
    let mut o = Out::new(format);
    for step in steps {
        o.field(
            "cumulative",
            format!("{}\t{}", step.prefix.join("+"), step.rank),
        );
    }
    o.buf
}

pub fn render_dark(dark: &[RowLabel], total: usize, format: OutputFormat) -> String {
    let mut o = Out::new(format);
    o.field("endpoint_count", total);
    o.field("dark_count", dark.len());
    o.field("dark_pct", pct(dark.len(), total));
    for l in dark {
        if o.kv {
            o.field("dark", format!("{}\t{}", l.corpus, l.endpoint));
        } else {
            o.line(format!("  {l}"));
        }
    }
    o.buf
}

pub fn render_witness(
    witness: &SectionWitness,
    view: Option<&IdentityView>,
    format: OutputFormat,
) -> String {
    let mut o = Out::new(format);
    o.field("assigned", format!("{}/14", witness.len()));
    o.field("complete", witness.is_complete());
    for (d, l) in witness.assignments() {
        if o.kv {
            o.field(&format!("pure_signal.{d}"), l);
        } else {
            o.line(format!("  {d} {:<20} {l}", d.concept()));
        }
    }
    let missing = witness.missing();
    if !missing.is_empty() {
        o.field("missing", dims_list(&missing));
    }
    if let Some(view) = view {
        o.field("identity_columns", dims_list(&view.column_order));
        if !o.kv {
            let width = view
                .row_labels
                .iter()
                .map(|l| l.to_string().chars().count())
                .max()
                .unwrap_or(0);
            let header: String = view.column_order.iter().map(|d| format!(" {d}")).collect();
            o.line(format!("  {:<width$}{header}", ""));
            for (label, cells) in view.row_labels.iter().zip(&view.cells) {
                let bits: String = cells.iter().map(|b| if *b { " 1" } else { " 0" }).collect();
                o.line(format!("  {:<width$}{bits}", label.to_string()));
            }
        }
    }
    o.buf
}

pub fn render_certificates(certs: &[DependencyCertificate], format: OutputFormat) -> String {
    let mut o = Out::new(format);
    o.field("dependency_count", certs.len());
    for c in certs {
        if o.kv {
            o.field("certificate", certificate_value(c));
        } else {
            o.line(format!(
                "  {}   over {} ({} rows involved)",
                c.render(),
                c.scope,
                c.witness_rows.len()
            ));
        }
    }
    o.buf
}

pub fn render_verdict(verdict: &Verdict, format: OutputFormat) -> String {
    let mut o = Out::new(format);
    match verdict {
        Verdict::Confirmed(c) => {
            o.field("verdict", "CONFIRMED");
            o.field("dependency", c.render());
            o.field("scope", &c.scope);
            o.field("rows_involved", c.witness_rows.len());
        }
        Verdict::Rejected(_) => {
            o.field("verdict", "REJECTED");
            o.field(
                "reason",
                verdict.to_string().trim_start_matches("REJECTED "),
            );
        }
    }
    o.buf
}

pub fn render_ablation(r: &AblationReport, format: OutputFormat) -> String {
    let mut o = Out::new(format);
    o.field("scope", &r.scope);
    o.field("endpoint_count", r.endpoint_count);
    o.field("rank_frozen", r.rank_frozen);
    o.field("rank_extended", r.rank_extended);
    o.field(
        "rank_preserved",
        if r.rank_preserved() {
            "yes".to_string()
        } else {
            "NO: extended tier changed the rank".to_string()
        },
    );
    o.field(
        "dark_frozen",
        format!(
            "{} ({}%)",
            r.dark_frozen,
            pct(r.dark_frozen, r.endpoint_count)
        ),
    );
    o.field(
        "dark_extended",
        format!(
            "{} ({}%)",
            r.dark_extended,
            pct(r.dark_extended, r.endpoint_count)
        ),
    );
    o.field(
        "covered_frozen_pct",
        format!("{:.1}", r.covered_pct_frozen()),
    );
    o.field(
        "covered_extended_pct",
        format!("{:.1}", r.covered_pct_extended()),
    );
    for d in Dimension::ALL {
        o.field(
            &format!("coverage.{d}"),
            format!(
                "{}\t{}",
                r.coverage_frozen[d.index()],
                r.coverage_extended[d.index()]
            ),
        );
    }
    o.buf
}
