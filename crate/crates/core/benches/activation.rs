use std::fs;
use std::hint::black_box;
use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quotient_rank::ingest::{load_run, Method};
use quotient_rank::patterns::activate_corpus_with;
use quotient_rank::{rank, CorpusManifest, Endpoint, Execution, PatternSet, SignalOptions};

const WORDS: &[&str] = &[
    "accounts",
    "balance",
    "transactions",
    "ledger",
    "payment",
    "consent",
    "payee",
    "mandate",
    "standing_order",
    "party",
    "customer",
    "product",
    "fees",
    "funds_confirmation",
    "discovery",
    "securities",
    "holdings",
    "loan",
    "exchange_rate",
    "nav",
    "servicing",
    "session",
    "record",
    "retrieve",
    "initiate",
    "control",
    "exchange",
    "capture",
    "update",
    "behavior",
    "qualifier",
];

/// Deterministic signals of 20-60 words, roughly the size of real ones.
fn synthetic(n: usize) -> Vec<Endpoint> {
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    (0..n)
        .map(|i| {
            let len = 20 + (next() % 40) as usize;
            let signal = (0..len)
                .map(|_| WORDS[(next() % WORDS.len() as u64) as usize])
                .collect::<Vec<_>>()
                .join(" ");
            Endpoint {
                corpus_label: "SYN".into(),
                endpoint_id: format!("GET /r{i}"),
                path: format!("/r{i}"),
                method: Method::Get,
                signal,
                source: PathBuf::from("synthetic.yaml"),
            }
        })
        .collect()
}

fn modes() -> Vec<(&'static str, Execution)> {
    let mut m = vec![("sequential", Execution::Sequential)];
    if Execution::Parallel.is_parallel() {
        m.push(("parallel", Execution::Parallel));
    }
    m
}

fn activation(c: &mut Criterion) {
    let patterns = PatternSet::default_set();
    let endpoints = synthetic(5000);
    let mut group = c.benchmark_group("activate_5000");
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| activate_corpus_with(black_box(&endpoints), &patterns, true, exec))
        });
    }
    group.finish();

    let m = activate_corpus_with(&endpoints, &patterns, true, Execution::Sequential);
    c.bench_function("rank_5000", |b| b.iter(|| rank(black_box(&m))));
}

fn ingestion(c: &mut Criterion) {
    let dir = tempfile::tempdir().expect("tempdir");
    for doc in 0..40 {
        let mut text =
            String::from("openapi: 3.0.3\ninfo: {title: synthetic, version: '1'}\npaths:\n");
        for op in 0..50 {
            text.push_str(&format!(
                "  /d{doc}/r{op}:\n    get:\n      operationId: getAccountBalance{op}\n      summary: Retrieve standing order and payee details\n      responses:\n        '200':\n          description: ok\n          content:\n            application/json:\n              schema:\n                properties:\n                  transactionId: {{type: string}}\n                  instructedAmount: {{type: number}}\n"
            ));
        }
        fs::write(dir.path().join(format!("doc{doc:02}.yaml")), text).expect("write");
    }
    let manifests = vec![CorpusManifest::new("SYN", vec![dir.path().to_path_buf()])];
    let opts = SignalOptions::default();
    let mut group = c.benchmark_group("ingest_40x50");
    group.sample_size(20);
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| load_run(black_box(&manifests), &opts, exec).expect("load"))
        });
    }
    group.finish();
}

criterion_group!(benches, activation, ingestion);
criterion_main!(benches);
