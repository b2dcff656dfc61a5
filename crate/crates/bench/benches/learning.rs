use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use abl_bench::trip_corpus;
use abl_core::align::{alignment_learning, AlignmentInstance};
use abl_core::grammar::{CkyParser, Scfg};
use abl_core::select::{select, SelectionConfig, SelectionModel};

fn bench_alignment(c: &mut Criterion) {
    let corpus = trip_corpus(1, 64);
    let mut group = c.benchmark_group("alignment_learning");
    group.sample_size(20);
    for instance in [
        AlignmentInstance::Default,
        AlignmentInstance::Biased,
        AlignmentInstance::All,
    ] {
        group.bench_with_input(
            BenchmarkId::from_parameter(instance.name()),
            &instance,
            |b, &instance| b.iter(|| alignment_learning(black_box(&corpus), instance)),
        );
    }
    group.finish();
}

fn bench_selection(c: &mut Criterion) {
    let corpus = trip_corpus(2, 64);
    let space = alignment_learning(&corpus, AlignmentInstance::All);
    let mut group = c.benchmark_group("selection");
    group.sample_size(20);
    for model in [SelectionModel::First, SelectionModel::Leaf, SelectionModel::Branch] {
        group.bench_with_input(
            BenchmarkId::from_parameter(model.name()),
            &model,
            |b, &model| {
                let config = SelectionConfig::new(model);
                b.iter(|| select(black_box(&space), &config).unwrap())
            },
        );
    }
    group.finish();
}

fn bench_parsing(c: &mut Criterion) {
    let corpus = trip_corpus(3, 64);
    let space = alignment_learning(&corpus, AlignmentInstance::Default);
    let (bank, _) = select(&space, &SelectionConfig::new(SelectionModel::Leaf)).unwrap();
    let grammar = Scfg::extract(&bank);
    let parser = CkyParser::new(&grammar);
    c.bench_function("cky_reparse_corpus", |b| {
        b.iter(|| {
            for sentence in corpus.sentences() {
                black_box(parser.parse(black_box(sentence)));
            }
        })
    });
}

criterion_group!(benches, bench_alignment, bench_selection, bench_parsing);
criterion_main!(benches);
