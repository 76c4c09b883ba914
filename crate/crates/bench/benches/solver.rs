use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use orthorep::fixtures;
use orthorep::linalg::{gram_matrix, int_vector, psd_pivots, rref, RationalMatrix};
use orthorep::{build_representation, find_delta_ordering, SolverConfig};

fn linalg(c: &mut Criterion) {
    let vectors: Vec<_> = fixtures::reference_vectors()
        .iter()
        .map(|v| int_vector(v))
        .collect();
    let m = RationalMatrix::from_rows(vectors.clone(), fixtures::REFERENCE_DIMENSION).unwrap();
    c.bench_function("rref_12x5", |b| b.iter(|| rref(black_box(&m))));
    c.bench_function("gram_psd_12", |b| {
        b.iter(|| psd_pivots(&gram_matrix(black_box(&vectors)).unwrap()).unwrap())
    });
}

fn delta(c: &mut Criterion) {
    let h = fixtures::k3_p4_complement();
    c.bench_function("find_delta_ordering_h", |b| {
        b.iter(|| find_delta_ordering(black_box(&h)).unwrap())
    });
}

fn solver(c: &mut Criterion) {
    let h = fixtures::k3_p4_complement();
    let order = fixtures::paper_rowmajor();
    let config = SolverConfig::default();
    c.bench_function("build_representation_h", |b| {
        b.iter(|| build_representation(black_box(&h), &order, 5, &config).unwrap())
    });
}

criterion_group!(benches, linalg, delta, solver);
criterion_main!(benches);
