use std::hint::black_box;
use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ropebound_core::config::RunConfig;
use ropebound_core::corpus::{self, CorpusEntry};
use ropebound_core::pipeline::{self, Check, KnotInput};
use ropebound_core::skein::{EngineConfig, SkeinEngine};

fn corpus() -> Vec<CorpusEntry> {
    corpus::load(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")).expect("corpus loads")
}

fn modes() -> Vec<(&'static str, bool)> {
    let mut m = vec![("sequential", false)];
    if ropebound_core::par::available() {
        m.push(("parallel", true));
    }
    m
}

fn engine(parallel: bool) -> SkeinEngine {
    // Threshold low enough that the satellites below actually fork.
    SkeinEngine::new(EngineConfig { parallel, parallel_threshold: 8, ..EngineConfig::default() })
}

fn homfly_satellites(c: &mut Criterion) {
    let entries = corpus();
    let mut group = c.benchmark_group("homfly_satellite");
    group.sample_size(10);
    for id in ["3_1", "4_1"] {
        let knot = &entries.iter().find(|e| e.id == id).unwrap().diagram;
        let sat = knot.reverse_parallel(1).unwrap();
        for (mode, parallel) in modes() {
            group.bench_with_input(BenchmarkId::new(mode, id), &sat, |b, d| {
                b.iter(|| engine(parallel).homfly(black_box(d)).unwrap())
            });
        }
    }
    group.finish();
}

fn kauffman_corpus(c: &mut Criterion) {
    let entries = corpus();
    let mut group = c.benchmark_group("kauffman_7_crossings");
    group.sample_size(10);
    for (mode, parallel) in modes() {
        group.bench_function(mode, |b| {
            b.iter(|| {
                let e = engine(parallel);
                for k in entries.iter().filter(|k| k.crossing_number == 7) {
                    black_box(e.kauffman(&k.diagram).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn lemma1_run(c: &mut Criterion) {
    let inputs: Vec<KnotInput> = corpus().iter().filter(|e| e.crossing_number <= 4).map(KnotInput::from).collect();
    let mut group = c.benchmark_group("verify_lemma1");
    group.sample_size(10);
    for (mode, parallel) in modes() {
        let config = RunConfig { parallel, ..RunConfig::default() };
        group.bench_function(mode, |b| b.iter(|| pipeline::run(Check::Lemma1, black_box(&inputs), &config)));
    }
    group.finish();
}

criterion_group!(benches, homfly_satellites, kauffman_corpus, lemma1_run);
criterion_main!(benches);
