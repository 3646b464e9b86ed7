use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use idemnorm::classify::{classify_structure, enumerate_classes, SweepOptions};
use idemnorm::exact::build_path_witness;
use idemnorm::linalg::{svd, DenseMatrix};
use idemnorm::{norm_bounds, BoundsOptions, GraphName};

fn bounds(c: &mut Criterion) {
    let mut group = c.benchmark_group("norm_bounds");
    let opts = BoundsOptions::default();
    for name in [GraphName::SigmaSquare(4), GraphName::E(4), GraphName::Trie, GraphName::Gee7, GraphName::Obstruction53] {
        let a = name.graph().unwrap().to_matrix();
        group.bench_with_input(BenchmarkId::from_parameter(name), &a, |b, a| b.iter(|| norm_bounds(black_box(a), &opts)));
    }
    group.finish();
}

fn dense_svd(c: &mut Criterion) {
    let mut group = c.benchmark_group("svd");
    for n in [4usize, 8, 16, 32] {
        let a = DenseMatrix::from_fn(n, n, |i, j| ((i * 31 + j * 17) % 13) as f64 / 13.0 - 0.5);
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| svd(black_box(a))));
    }
    group.finish();
}

fn structure(c: &mut Criterion) {
    let g = GraphName::Obstruction54.graph().unwrap();
    c.bench_function("classify_structure/obstruction:5.4", |b| b.iter(|| classify_structure(black_box(&g))));
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    let opts = SweepOptions { max_m: 3, max_n: 3, ..SweepOptions::default() };
    group.bench_function("3x3", |b| b.iter(|| enumerate_classes(black_box(&opts)).unwrap()));
    group.finish();
}

fn witness(c: &mut Criterion) {
    let mut group = c.benchmark_group("path_witness");
    for n in [4usize, 16, 64] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| build_path_witness(black_box(n)).unwrap().check(1e-9).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bounds, dense_svd, structure, witness);
criterion_main!(benches);
