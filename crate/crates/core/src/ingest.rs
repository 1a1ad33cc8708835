//! Corpus loading and semantic signal extraction.
//!
//! Every `(path, method)` operation of an OpenAPI 3 document becomes one
//! [`Endpoint`] whose `signal` is the lowercased concatenation of:
//!
//! 1. the URL path template;
//! 2. `operationId`, `summary`, `description`;
//! 3. every tag;
//! 4. per parameter: `name`, `description`, then the schema harvest;
//! 5. the request-body schema harvests;
//! 6. every response-body schema harvest.
//!
//! Schema harvesting collects `title`, `description`, `name`, `summary` and
//! `enum` values at each node, records a `$ref` by its target name only, and
//! descends into `properties`, `items`, `allOf`, `anyOf`, `oneOf` down to a
//! depth of four.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde_yaml::Value;
use walkdir::WalkDir;

use crate::exec::{map_ordered, Execution};

/// Deepest schema level whose strings are harvested.
pub const MAX_SCHEMA_DEPTH: usize = 4;

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("malformed spec {path}: {reason}")]
    MalformedSpec { path: PathBuf, reason: String },
    #[error("{path}: unsupported document version `{version}` (OpenAPI 3 required)")]
    UnsupportedVersion { path: PathBuf, version: String },
    #[error("corpus {corpus}: duplicate endpoint `{endpoint}` in {first} and {second}")]
    DuplicateEndpoint {
        corpus: String,
        endpoint: String,
        first: PathBuf,
        second: PathBuf,
    },
    #[error("corpus {corpus}: no OpenAPI documents found under the given sources")]
    NoDocuments { corpus: String },
    #[error("corpus label must be non-empty")]
    EmptyLabel,
    #[error("corpus label `{0}` is defined more than once")]
    DuplicateCorpus(String),
    #[error("manifest {path}, line {line}: {reason}")]
    Manifest {
        path: PathBuf,
        line: usize,
        reason: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FormatHint {
    #[default]
    Auto,
    Yaml,
    Json,
}

impl FromStr for FormatHint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(FormatHint::Auto),
            "yaml" | "yml" => Ok(FormatHint::Yaml),
            "json" => Ok(FormatHint::Json),
            other => Err(format!("unknown format hint `{other}`")),
        }
    }
}

/// One named corpus and the files or directories that make it up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusManifest {
    pub corpus_label: String,
    pub source_paths: Vec<PathBuf>,
    pub format_hint: FormatHint,
}

impl CorpusManifest {
    pub fn new(label: impl Into<String>, sources: Vec<PathBuf>) -> Self {
        CorpusManifest {
            corpus_label: label.into(),
            source_paths: sources,
            format_hint: FormatHint::Auto,
        }
    }
}

/// Parses a manifest of `label = path` lines. Labels may repeat to add more
/// sources; relative paths resolve against the manifest's directory. Blank
/// lines and `#` comments are ignored. Corpora come back in order of first
/// appearance.
pub fn parse_manifest(text: &str, origin: &Path) -> Result<Vec<CorpusManifest>, IngestError> {
    let base = origin.parent().unwrap_or_else(|| Path::new(""));
    let mut corpora: Vec<CorpusManifest> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |reason: &str| IngestError::Manifest {
            path: origin.to_path_buf(),
            line: idx + 1,
            reason: reason.to_string(),
        };
        let (label, path) = line
            .split_once('=')
            .ok_or_else(|| err("expected `label = path`"))?;
        let (label, path) = (label.trim(), path.trim());
        if label.is_empty() {
            return Err(err("empty corpus label"));
        }
        if path.is_empty() {
            return Err(err("empty source path"));
        }
        let path = base.join(path);
        match corpora.iter_mut().find(|c| c.corpus_label == label) {
            Some(c) => c.source_paths.push(path),
            None => corpora.push(CorpusManifest::new(label, vec![path])),
        }
    }
    Ok(corpora)
}

pub fn read_manifest(path: &Path) -> Result<Vec<CorpusManifest>, IngestError> {
    let text = std::fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_manifest(&text, path)
}

/// HTTP methods in canonical enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Get,
    Put,
    Post,
    Delete,
    Patch,
    Head,
    Options,
    Trace,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Get,
        Method::Put,
        Method::Post,
        Method::Delete,
        Method::Patch,
        Method::Head,
        Method::Options,
        Method::Trace,
    ];

    /// The lowercase key used in a path item.
    pub fn key(self) -> &'static str {
        match self {
            Method::Get => "get",
            Method::Put => "put",
            Method::Post => "post",
            Method::Delete => "delete",
            Method::Patch => "patch",
            Method::Head => "head",
            Method::Options => "options",
            Method::Trace => "trace",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key().to_ascii_uppercase())
    }
}

/// One operation of a corpus together with its semantic signal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endpoint {
    pub corpus_label: String,
    /// `"<METHOD> <path>"`, e.g. `GET /accounts`.
    pub endpoint_id: String,
    pub path: String,
    pub method: Method,
    pub signal: String,
    pub source: PathBuf,
}

impl Endpoint {
    pub fn make_id(method: Method, path: &str) -> String {
        format!("{method} {path}")
    }
}

/// Switches for the extraction choices the source method leaves open.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignalOptions {
    /// Insert `_` at lower→upper camelCase boundaries before lowercasing.
    pub split_camel_case: bool,
    /// Count `allOf`/`anyOf`/`oneOf` as a depth level.
    pub combinators_consume_depth: bool,
}

impl Default for SignalOptions {
    fn default() -> Self {
        SignalOptions {
            split_camel_case: true,
            combinators_consume_depth: false,
        }
    }
}

/// Lowercases `text`, first marking camelCase boundaries with `_` when
/// enabled (`exchangeRate` → `exchange_rate`).
pub fn normalize(text: &str, opts: &SignalOptions) -> String {
    let mut out = String::with_capacity(text.len() + 4);
    let mut prev_lower = false;
    for ch in text.chars() {
        if opts.split_camel_case && prev_lower && ch.is_uppercase() {
            out.push('_');
        }
        prev_lower = ch.is_lowercase();
        out.extend(ch.to_lowercase());
    }
    out
}

/// Strings harvested from one schema subtree, in pre-order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchemaHarvest {
    pub strings: Vec<String>,
    pub depth_budget: usize,
}

/// Harvests `schema` starting at `depth`. A `$ref` contributes its target
/// name and is never expanded, so reference cycles cannot recurse.
pub fn traverse_schema(schema: &Value, depth: usize, opts: &SignalOptions) -> SchemaHarvest {
    let mut harvest = SchemaHarvest {
        strings: Vec::new(),
        depth_budget: MAX_SCHEMA_DEPTH,
    };
    harvest_node(schema, depth, opts, &mut harvest.strings);
    harvest
}

const HARVESTED_FIELDS: [&str; 4] = ["title", "description", "name", "summary"];
const COMBINATORS: [&str; 3] = ["allOf", "anyOf", "oneOf"];

fn harvest_node(node: &Value, depth: usize, opts: &SignalOptions, out: &mut Vec<String>) {
    if depth > MAX_SCHEMA_DEPTH {
        return;
    }
    let Value::Mapping(map) = node else {
        if !node.is_null() {
            log::warn!("schema node is not an object; skipped");
        }
        return;
    };
    if let Some(reference) = map.get("$ref") {
        match reference.as_str() {
            Some(r) => push(out, &ref_name(r), opts),
            None => log::warn!("non-string $ref skipped"),
        }
        return;
    }
    for field in HARVESTED_FIELDS {
        if let Some(v) = map.get(field) {
            match v.as_str() {
                Some(s) => push(out, s, opts),
                None => log::warn!("non-string `{field}` skipped"),
            }
        }
    }
    if let Some(values) = map.get("enum") {
        match values.as_sequence() {
            Some(seq) => {
                for v in seq {
                    if let Some(s) = scalar_text(v) {
                        push(out, &s, opts);
                    }
                }
            }
            None => log::warn!("`enum` is not a list; skipped"),
        }
    }
    if depth >= MAX_SCHEMA_DEPTH {
        return;
    }
    if let Some(props) = map.get("properties") {
        match props.as_mapping() {
            Some(props) => {
                for (key, child) in props {
                    if let Some(k) = scalar_text(key) {
                        push(out, &k, opts);
                    }
                    harvest_node(child, depth + 1, opts, out);
                }
            }
            None => log::warn!("`properties` is not an object; skipped"),
        }
    }
    if let Some(items) = map.get("items") {
        harvest_node(items, depth + 1, opts, out);
    }
    let branch_depth = if opts.combinators_consume_depth {
        depth + 1
    } else {
        depth
    };
    for combinator in COMBINATORS {
        if let Some(branches) = map.get(combinator) {
            match branches.as_sequence() {
                Some(seq) => {
                    for branch in seq {
                        harvest_node(branch, branch_depth, opts, out);
                    }
                }
                None => log::warn!("`{combinator}` is not a list; skipped"),
            }
        }
    }
}

fn push(out: &mut Vec<String>, s: &str, opts: &SignalOptions) {
    let s = s.trim();
    if !s.is_empty() {
        out.push(normalize(s, opts));
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        _ => None,
    }
}

/// The target name of a reference: the last pointer segment, or the file
/// stem for whole-file references.
pub fn ref_name(reference: &str) -> String {
    let (file, fragment) = match reference.split_once('#') {
        Some((file, fragment)) => (file, fragment),
        None => (reference, ""),
    };
    let segment = fragment.rsplit('/').find(|s| !s.is_empty());
    match segment {
        Some(seg) => seg.replace("~1", "/").replace("~0", "~"),
        None => {
            let last = file.rsplit('/').next().unwrap_or(file);
            match last.rsplit_once('.') {
                Some((stem, _)) if !stem.is_empty() => stem.to_string(),
                _ => last.to_string(),
            }
        }
    }
}

/// Follows local `#/...` references between non-schema components
/// (parameters, request bodies, responses, path items).
fn resolve<'a>(doc: &'a Value, node: &'a Value) -> Option<&'a Value> {
    let mut current = node;
    for _ in 0..16 {
        let Some(reference) = current.get("$ref") else {
            return Some(current);
        };
        let target = reference
            .as_str()
            .and_then(|r| r.strip_prefix('#'))
            .and_then(|pointer| lookup_pointer(doc, pointer));
        match target {
            Some(t) => current = t,
            None => {
                log::warn!("unresolvable reference {:?}; skipped", reference);
                return None;
            }
        }
    }
    log::warn!("reference chain too long or cyclic; skipped");
    None
}

fn lookup_pointer<'a>(doc: &'a Value, pointer: &str) -> Option<&'a Value> {
    let mut node = doc;
    for raw in pointer.split('/').skip(1) {
        let key = raw.replace("~1", "/").replace("~0", "~");
        node = match node {
            Value::Mapping(m) => m.get(key.as_str())?,
            Value::Sequence(s) => s.get(key.parse::<usize>().ok()?)?,
            _ => return None,
        };
    }
    Some(node)
}

fn content_schemas(node: &Value) -> Vec<&Value> {
    match node.get("content") {
        None => Vec::new(),
        Some(Value::Mapping(media)) => media.values().filter_map(|m| m.get("schema")).collect(),
        Some(_) => {
            log::warn!("`content` is not an object; skipped");
            Vec::new()
        }
    }
}

/// Builds the semantic signal of one operation.
///
/// `path_item` supplies path-level parameters, which apply to every
/// operation under the path and precede the operation's own.
pub fn extract_signal(
    path: &str,
    path_item: &Value,
    operation: &Value,
    doc: &Value,
    opts: &SignalOptions,
) -> String {
    let mut parts: Vec<String> = Vec::new();
    push(&mut parts, path, opts);

    for field in ["operationId", "summary", "description"] {
        if let Some(s) = operation.get(field).and_then(Value::as_str) {
            push(&mut parts, s, opts);
        }
    }

    match operation.get("tags") {
        Some(Value::Sequence(tags)) => {
            for t in tags {
                if let Some(s) = scalar_text(t) {
                    push(&mut parts, &s, opts);
                }
            }
        }
        Some(_) => log::warn!("{path}: `tags` is not a list; skipped"),
        None => {}
    }

    let params = [path_item.get("parameters"), operation.get("parameters")];
    for list in params.into_iter().flatten() {
        let Some(list) = list.as_sequence() else {
            log::warn!("{path}: `parameters` is not a list; skipped");
            continue;
        };
        for param in list {
            let Some(param) = resolve(doc, param) else {
                continue;
            };
            for field in ["name", "description"] {
                if let Some(s) = param.get(field).and_then(Value::as_str) {
                    push(&mut parts, s, opts);
                }
            }
            if let Some(schema) = param.get("schema") {
                parts.extend(traverse_schema(schema, 0, opts).strings);
            }
            for schema in content_schemas(param) {
                parts.extend(traverse_schema(schema, 0, opts).strings);
            }
        }
    }

    if let Some(body) = operation.get("requestBody").and_then(|b| resolve(doc, b)) {
        for schema in content_schemas(body) {
            parts.extend(traverse_schema(schema, 0, opts).strings);
        }
    }

    match operation.get("responses") {
        Some(Value::Mapping(responses)) => {
            for response in responses.values() {
                let Some(response) = resolve(doc, response) else {
                    continue;
                };
                for schema in content_schemas(response) {
                    parts.extend(traverse_schema(schema, 0, opts).strings);
                }
            }
        }
        Some(_) => log::warn!("{path}: `responses` is not an object; skipped"),
        None => {}
    }

    parts.join(" ")
}

/// A parsed source document.
#[derive(Debug, Clone)]
pub struct Document {
    pub path: PathBuf,
    pub root: Value,
}

pub fn load_document(path: &Path, hint: FormatHint) -> Result<Document, IngestError> {
    let bytes = std::fs::read(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let is_json = match hint {
        FormatHint::Json => true,
        FormatHint::Yaml => false,
        FormatHint::Auto => path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json")),
    };
    let parse_err = |message: String| IngestError::Parse {
        path: path.to_path_buf(),
        message,
    };
    let root = if is_json {
        let json: serde_json::Value =
            serde_json::from_slice(&bytes).map_err(|e| parse_err(e.to_string()))?;
        serde_yaml::to_value(json).map_err(|e| parse_err(e.to_string()))?
    } else {
        serde_yaml::from_slice(&bytes).map_err(|e| parse_err(e.to_string()))?
    };
    Ok(Document {
        path: path.to_path_buf(),
        root,
    })
}

fn check_version(doc: &Document) -> Result<(), IngestError> {
    let root = &doc.root;
    if !root.is_mapping() {
        return Err(IngestError::MalformedSpec {
            path: doc.path.clone(),
            reason: "document root is not an object".into(),
        });
    }
    if let Some(v) = root.get("swagger") {
        return Err(IngestError::UnsupportedVersion {
            path: doc.path.clone(),
            version: format!("swagger {}", scalar_text(v).unwrap_or_default()),
        });
    }
    match root.get("openapi").and_then(scalar_text) {
        Some(v) if v.starts_with('3') => Ok(()),
        Some(v) => Err(IngestError::UnsupportedVersion {
            path: doc.path.clone(),
            version: v,
        }),
        None => Err(IngestError::MalformedSpec {
            path: doc.path.clone(),
            reason: "missing `openapi` version field".into(),
        }),
    }
}

/// Enumerates the operations of one document in path order, then canonical
/// method order.
pub fn document_endpoints(
    corpus_label: &str,
    doc: &Document,
    opts: &SignalOptions,
) -> Result<Vec<Endpoint>, IngestError> {
    check_version(doc)?;
    let paths = match doc.root.get("paths") {
        Some(Value::Mapping(paths)) => paths,
        _ => {
            return Err(IngestError::MalformedSpec {
                path: doc.path.clone(),
                reason: "missing `paths` map".into(),
            })
        }
    };
    let mut endpoints = Vec::new();
    for (key, item) in paths {
        let Some(path) = key.as_str() else {
            log::warn!("{}: non-string path key skipped", doc.path.display());
            continue;
        };
        let Some(item) = resolve(&doc.root, item) else {
            continue;
        };
        for method in Method::ALL {
            let Some(operation) = item.get(method.key()) else {
                continue;
            };
            if !operation.is_mapping() {
                log::warn!(
                    "{}: {method} {path} is not an object; skipped",
                    doc.path.display()
                );
                continue;
            }
            endpoints.push(Endpoint {
                corpus_label: corpus_label.to_string(),
                endpoint_id: Endpoint::make_id(method, path),
                path: path.to_string(),
                method,
                signal: extract_signal(path, item, operation, &doc.root, opts),
                source: doc.path.clone(),
            });
        }
    }
    Ok(endpoints)
}

fn is_spec_file(path: &Path) -> bool {
    matches!(
        path.extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .as_deref(),
        Some("yaml" | "yml" | "json")
    )
}

/// Expands directories into their spec files (sorted by path); plain files
/// pass through unchanged.
pub fn resolve_sources(manifest: &CorpusManifest) -> Result<Vec<PathBuf>, IngestError> {
    let mut files = Vec::new();
    for source in &manifest.source_paths {
        let meta = std::fs::metadata(source).map_err(|e| IngestError::Io {
            path: source.clone(),
            source: e,
        })?;
        if meta.is_dir() {
            for entry in WalkDir::new(source).sort_by_file_name() {
                let entry = entry.map_err(|e| IngestError::Io {
                    path: source.clone(),
                    source: e.into(),
                })?;
                if entry.file_type().is_file() && is_spec_file(entry.path()) {
                    files.push(entry.into_path());
                }
            }
        } else {
            files.push(source.clone());
        }
    }
    if files.is_empty() {
        return Err(IngestError::NoDocuments {
            corpus: manifest.corpus_label.clone(),
        });
    }
    Ok(files)
}

/// Loads one corpus.
pub fn load_corpus(
    manifest: &CorpusManifest,
    opts: &SignalOptions,
) -> Result<Vec<Endpoint>, IngestError> {
    load_run(std::slice::from_ref(manifest), opts, Execution::default())
}

/// Loads several corpora. Documents are parsed and extracted independently
/// (concurrently under [`Execution::Parallel`]); the result is assembled in
/// manifest order, then document order within each corpus.
pub fn load_run(
    manifests: &[CorpusManifest],
    opts: &SignalOptions,
    exec: Execution,
) -> Result<Vec<Endpoint>, IngestError> {
    let mut jobs: Vec<(&CorpusManifest, PathBuf)> = Vec::new();
    for (i, m) in manifests.iter().enumerate() {
        if m.corpus_label.is_empty() {
            return Err(IngestError::EmptyLabel);
        }
        if manifests[..i]
            .iter()
            .any(|o| o.corpus_label == m.corpus_label)
        {
            return Err(IngestError::DuplicateCorpus(m.corpus_label.clone()));
        }
        for file in resolve_sources(m)? {
            jobs.push((m, file));
        }
    }

    let extracted = map_ordered(exec, &jobs, |(m, file)| {
        let doc = load_document(file, m.format_hint)?;
        document_endpoints(&m.corpus_label, &doc, opts)
    });

    let mut endpoints = Vec::new();
    let mut seen: HashMap<(String, String), PathBuf> = HashMap::new();
    for batch in extracted {
        for ep in batch? {
            let key = (ep.corpus_label.clone(), ep.endpoint_id.clone());
            if let Some(first) = seen.get(&key) {
                return Err(IngestError::DuplicateEndpoint {
                    corpus: ep.corpus_label,
                    endpoint: ep.endpoint_id,
                    first: first.clone(),
                    second: ep.source,
                });
            }
            seen.insert(key, ep.source.clone());
            endpoints.push(ep);
        }
    }
    Ok(endpoints)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yaml(s: &str) -> Value {
        serde_yaml::from_str(s).unwrap()
    }

    fn harvest(s: &str) -> Vec<String> {
        traverse_schema(&yaml(s), 0, &SignalOptions::default()).strings
    }

    #[test]
    fn harvests_title_then_properties() {
        let got = harvest("title: Amount\nproperties:\n  currency:\n    description: ISO code\n");
        assert_eq!(got, ["amount", "currency", "iso code"]);
    }

    #[test]
    fn ref_is_name_only() {
        assert_eq!(harvest("$ref: '#/components/schemas/Account'"), ["account"]);
    }

    #[test]
    fn empty_schema_harvests_nothing() {
        assert!(harvest("{}").is_empty());
    }

    #[test]
    fn field_order_within_node() {
        let got =
            harvest("summary: s\nname: n\ndescription: d\ntitle: t\nenum: [X1, 2, true, null]\n");
        assert_eq!(got, ["t", "d", "n", "s", "x1", "2", "true"]);
    }

    #[test]
    fn combinators_do_not_consume_depth_by_default() {
        // allOf at level 3; the branch's property sits at level 4 only when
        // the combinator itself does not count as a level.
        let doc = "properties:\n  a:\n    properties:\n      b:\n        properties:\n          c:\n            allOf:\n              - properties:\n                  e:\n                    title: deep\n";
        let got = harvest(doc);
        assert!(got.contains(&"deep".to_string()));
        let opts = SignalOptions {
            combinators_consume_depth: true,
            ..SignalOptions::default()
        };
        let got = traverse_schema(&yaml(doc), 0, &opts).strings;
        assert!(!got.contains(&"deep".to_string()));
    }

    #[test]
    fn malformed_subtrees_are_skipped() {
        let got = harvest("title: ok\nproperties: [1, 2]\nenum: notalist\nitems: 7\n");
        assert_eq!(got, ["ok"]);
    }

    #[test]
    fn normalization_splits_camel_case() {
        let opts = SignalOptions::default();
        assert_eq!(normalize("exchangeRate", &opts), "exchange_rate");
        assert_eq!(normalize("securityId", &opts), "security_id");
        assert_eq!(normalize("OBReadAccount6", &opts), "obread_account6");
        assert_eq!(normalize("Get Account", &opts), "get account");
        let off = SignalOptions {
            split_camel_case: false,
            ..opts
        };
        assert_eq!(normalize("exchangeRate", &off), "exchangerate");
    }

    #[test]
    fn ref_names() {
        assert_eq!(ref_name("#/components/schemas/Account"), "Account");
        assert_eq!(ref_name("common.yaml#/components/schemas/Party"), "Party");
        assert_eq!(ref_name("./schemas/Money.yaml"), "Money");
        assert_eq!(ref_name("#/components/schemas/a~1b"), "a/b");
    }

    #[test]
    fn two_segment_signal() {
        let doc = yaml("openapi: 3.0.0\npaths: {}\n");
        let op = yaml("summary: Get Account\n");
        let s = extract_signal(
            "/accounts",
            &Value::Null,
            &op,
            &doc,
            &SignalOptions::default(),
        );
        assert_eq!(s, "/accounts get account");
    }

    #[test]
    fn parameter_refs_resolve_to_the_parameter_object() {
        let doc = yaml(
            "openapi: 3.0.0\npaths: {}\ncomponents:\n  parameters:\n    Acc:\n      name: accountId\n      description: The account\n      schema:\n        type: string\n        title: AccountIdentifier\n",
        );
        let op = yaml("parameters:\n  - $ref: '#/components/parameters/Acc'\n");
        let s = extract_signal("/x", &Value::Null, &op, &doc, &SignalOptions::default());
        assert_eq!(s, "/x account_id the account account_identifier");
    }

    #[test]
    fn response_refs_resolve_but_schema_refs_do_not() {
        let doc = yaml(
            "openapi: 3.0.0\npaths: {}\ncomponents:\n  responses:\n    Ok:\n      description: fine\n      content:\n        application/json:\n          schema:\n            $ref: '#/components/schemas/Body'\n  schemas:\n    Body:\n      title: SENTINEL\n",
        );
        let op = yaml("responses:\n  '200':\n    $ref: '#/components/responses/Ok'\n");
        let s = extract_signal("/x", &Value::Null, &op, &doc, &SignalOptions::default());
        assert_eq!(s, "/x body");
    }

    #[test]
    fn cyclic_component_refs_terminate() {
        let doc = yaml(
            "openapi: 3.0.0\npaths: {}\ncomponents:\n  parameters:\n    A:\n      $ref: '#/components/parameters/B'\n    B:\n      $ref: '#/components/parameters/A'\n",
        );
        let op = yaml("parameters:\n  - $ref: '#/components/parameters/A'\n");
        let s = extract_signal("/x", &Value::Null, &op, &doc, &SignalOptions::default());
        assert_eq!(s, "/x");
    }

    #[test]
    fn manifest_parsing() {
        let text = "# corpora\nOBIE = obie/\nCDR=cdr.yaml\n\nOBIE = extra.json\n";
        let got = parse_manifest(text, Path::new("/data/run.conf")).unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(got[0].corpus_label, "OBIE");
        assert_eq!(
            got[0].source_paths,
            vec![
                PathBuf::from("/data/obie/"),
                PathBuf::from("/data/extra.json")
            ]
        );
        assert_eq!(got[1].source_paths, vec![PathBuf::from("/data/cdr.yaml")]);
    }

    #[test]
    fn manifest_errors_carry_line_numbers() {
        let err = parse_manifest("A = x\nbogus line\n", Path::new("m.conf")).unwrap_err();
        assert!(matches!(err, IngestError::Manifest { line: 2, .. }));
        let err = parse_manifest(" = x\n", Path::new("m.conf")).unwrap_err();
        assert!(matches!(err, IngestError::Manifest { line: 1, .. }));
    }

    #[test]
    fn rejects_swagger_two() {
        let doc = Document {
            path: "s.yaml".into(),
            root: yaml("swagger: '2.0'\npaths: {}\n"),
        };
        let err = document_endpoints("X", &doc, &SignalOptions::default()).unwrap_err();
        assert!(matches!(err, IngestError::UnsupportedVersion { .. }));
    }

    #[test]
    fn requires_paths_map() {
        let doc = Document {
            path: "s.yaml".into(),
            root: yaml("openapi: 3.0.3\ninfo: {}\n"),
        };
        let err = document_endpoints("X", &doc, &SignalOptions::default()).unwrap_err();
        assert!(matches!(err, IngestError::MalformedSpec { .. }));
    }

    #[test]
    fn methods_in_canonical_order() {
        let doc = Document {
            path: "s.yaml".into(),
            root: yaml("openapi: 3.0.3\npaths:\n  /b:\n    post: {}\n    get: {}\n    parameters: []\n  /a:\n    delete: {}\n"),
        };
        let eps = document_endpoints("X", &doc, &SignalOptions::default()).unwrap();
        let ids: Vec<_> = eps.iter().map(|e| e.endpoint_id.as_str()).collect();
        assert_eq!(ids, ["GET /b", "POST /b", "DELETE /a"]);
    }
}
