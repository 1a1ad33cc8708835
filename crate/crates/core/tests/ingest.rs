mod common;

use std::fs;

use common::fixture;
use quotient_rank::ingest::{self, CorpusManifest, IngestError, SignalOptions};
use quotient_rank::{load_corpus, Execution};

fn corpus(label: &str, file: &str) -> CorpusManifest {
    CorpusManifest::new(label, vec![fixture(file)])
}

fn signal_of(file: &str, endpoint: &str) -> String {
    let eps = load_corpus(&corpus("X", file), &SignalOptions::default()).unwrap();
    eps.into_iter()
        .find(|e| e.endpoint_id == endpoint)
        .unwrap_or_else(|| panic!("no {endpoint}"))
        .signal
}

#[test]
fn enumerates_each_path_method_pair() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.yaml");
    fs::write(
        &path,
        "openapi: 3.0.0\npaths:\n  /accounts:\n    post: {}\n    get: {}\n",
    )
    .unwrap();
    let eps = load_corpus(
        &CorpusManifest::new("X", vec![path]),
        &SignalOptions::default(),
    )
    .unwrap();
    let ids: Vec<&str> = eps.iter().map(|e| e.endpoint_id.as_str()).collect();
    assert_eq!(ids, ["GET /accounts", "POST /accounts"]);
    assert!(eps.iter().all(|e| e.signal == "/accounts"));
}

#[test]
fn depth_ceiling_drops_levels_five_and_six() {
    let s = signal_of("stage1.yaml", "GET /deep");
    for level in 0..=4 {
        assert!(
            s.contains(&format!("sentinel_level{level}")),
            "level {level} missing: {s}"
        );
    }
    assert!(!s.contains("sentinel_level5"));
    assert!(!s.contains("sentinel_level6"));
}

#[test]
fn ref_targets_are_named_not_expanded() {
    let s = signal_of("stage1.yaml", "GET /referencing");
    assert_eq!(s, "/referencing referencing_schema target");
}

#[test]
fn fields_concatenate_in_rule_order() {
    let s = signal_of("stage1.yaml", "POST /ordered");
    assert_eq!(
        s,
        "/ordered ordered_op sentinel_summary sentinel_description \
         sentinel_tag_one sentinel_tag_two \
         sentinel_param_first sentinel_param_first_desc sentinel_param_first_schema \
         sentinel_param_second sentinel_enum_value \
         sentinel_request_json sentinel_request_xml \
         sentinel_response_ok sentinel_response_error"
    );
}

#[test]
fn beneficiary_reference_with_camel_case_property() {
    let s = signal_of("obie_mini.json", "GET /accounts/{AccountId}/beneficiaries");
    assert!(s.contains("beneficiary"));
    assert!(s.contains("creditor_account"));
    assert!(!s.contains("beneficiary_body_sentinel"));
}

#[test]
fn path_level_parameters_resolve_through_components() {
    let s = signal_of("obie_mini.json", "GET /accounts/{AccountId}/balances");
    assert!(s.starts_with("/accounts/{account_id}/balances get_account_balances get balances balances account_id a unique identifier"));
    assert!(s.ends_with("data balance obcash_balance1"));
}

#[test]
fn swapping_parameters_swaps_their_contribution() {
    let original = fs::read_to_string(fixture("stage1.yaml")).unwrap();
    let first = "        - name: sentinel_param_first\n          in: query\n          description: sentinel_param_first_desc\n          schema:\n            title: sentinel_param_first_schema\n";
    let second = "        - name: sentinel_param_second\n          in: query\n          schema:\n            enum: [sentinel_enum_value]\n";
    let swapped = original.replace(&format!("{first}{second}"), &format!("{second}{first}"));
    assert_ne!(original, swapped);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("swapped.yaml");
    fs::write(&path, swapped).unwrap();
    let eps = load_corpus(
        &CorpusManifest::new("X", vec![path]),
        &SignalOptions::default(),
    )
    .unwrap();
    let s = &eps
        .iter()
        .find(|e| e.endpoint_id == "POST /ordered")
        .unwrap()
        .signal;
    let before = signal_of("stage1.yaml", "POST /ordered");
    let a = "sentinel_param_first sentinel_param_first_desc sentinel_param_first_schema";
    let b = "sentinel_param_second sentinel_enum_value";
    assert_eq!(s, &before.replace(&format!("{a} {b}"), &format!("{b} {a}")));
}

#[test]
fn loading_is_deterministic_across_modes() {
    let manifests = vec![
        corpus("QPUB", "identity14.yaml"),
        corpus("OBIE", "obie_mini.json"),
        corpus("S1", "stage1.yaml"),
    ];
    let opts = SignalOptions::default();
    let a = ingest::load_run(&manifests, &opts, Execution::Parallel).unwrap();
    let b = ingest::load_run(&manifests, &opts, Execution::Sequential).unwrap();
    let c = ingest::load_run(&manifests, &opts, Execution::Parallel).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert!(a.iter().all(|e| e.signal == e.signal.to_lowercase()));
}

#[test]
fn directories_expand_in_file_name_order() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(fixture("stage1.yaml"), dir.path().join("b.yaml")).unwrap();
    fs::copy(fixture("obie_mini.json"), dir.path().join("a.json")).unwrap();
    fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let eps = load_corpus(
        &CorpusManifest::new("D", vec![dir.path().to_path_buf()]),
        &SignalOptions::default(),
    )
    .unwrap();
    assert_eq!(eps.len(), 11);
    assert_eq!(eps[0].endpoint_id, "GET /accounts");
    assert!(eps[0].source.ends_with("a.json"));
    assert!(eps[10].source.ends_with("b.yaml"));
}

#[test]
fn duplicate_endpoint_names_both_documents() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.yaml");
    let b = dir.path().join("b.yaml");
    fs::write(&a, "openapi: 3.0.0\npaths:\n  /x:\n    get: {}\n").unwrap();
    fs::write(&b, "openapi: 3.0.0\npaths:\n  /x:\n    get: {}\n").unwrap();
    let err = load_corpus(
        &CorpusManifest::new("X", vec![a.clone(), b.clone()]),
        &SignalOptions::default(),
    )
    .unwrap_err();
    match &err {
        IngestError::DuplicateEndpoint {
            first,
            second,
            endpoint,
            ..
        } => {
            assert_eq!(first, &a);
            assert_eq!(second, &b);
            assert_eq!(endpoint, "GET /x");
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(err.to_string().contains("a.yaml") && err.to_string().contains("b.yaml"));
}

#[test]
fn same_endpoint_in_different_corpora_is_fine() {
    let eps = ingest::load_run(
        &[corpus("A", "ablation.yaml"), corpus("B", "ablation.yaml")],
        &SignalOptions::default(),
        Execution::default(),
    )
    .unwrap();
    assert_eq!(eps.len(), 6);
}

#[test]
fn unreadable_and_malformed_inputs() {
    let missing = fixture("does_not_exist.yaml");
    let err = load_corpus(
        &CorpusManifest::new("X", vec![missing.clone()]),
        &SignalOptions::default(),
    )
    .unwrap_err();
    assert!(matches!(err, IngestError::Io { ref path, .. } if *path == missing));

    let dir = tempfile::tempdir().unwrap();
    let no_paths = dir.path().join("np.yaml");
    fs::write(&no_paths, "openapi: 3.0.0\ninfo: {title: x}\n").unwrap();
    let err = load_corpus(
        &CorpusManifest::new("X", vec![no_paths]),
        &SignalOptions::default(),
    )
    .unwrap_err();
    assert!(matches!(err, IngestError::MalformedSpec { .. }));

    let garbage = dir.path().join("bad.json");
    fs::write(&garbage, "{ not json").unwrap();
    let err = load_corpus(
        &CorpusManifest::new("X", vec![garbage]),
        &SignalOptions::default(),
    )
    .unwrap_err();
    assert!(matches!(err, IngestError::Parse { .. }));
}

#[test]
fn duplicate_and_empty_labels_rejected() {
    let err = ingest::load_run(
        &[corpus("A", "ablation.yaml"), corpus("A", "identity14.yaml")],
        &SignalOptions::default(),
        Execution::default(),
    )
    .unwrap_err();
    assert!(matches!(err, IngestError::DuplicateCorpus(_)));
    let err = ingest::load_run(
        &[corpus("", "ablation.yaml")],
        &SignalOptions::default(),
        Execution::default(),
    )
    .unwrap_err();
    assert!(matches!(err, IngestError::EmptyLabel));
}

#[test]
fn empty_directory_has_no_documents() {
    let dir = tempfile::tempdir().unwrap();
    let err = load_corpus(
        &CorpusManifest::new("E", vec![dir.path().into()]),
        &SignalOptions::default(),
    )
    .unwrap_err();
    assert!(matches!(err, IngestError::NoDocuments { .. }));
}
