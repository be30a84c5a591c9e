use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use sigsurf_core::curve::pairs_to_resolution_graph;
use sigsurf_core::{
    brieskorn_signature, eta_resolution, s_counts_fast, s_counts_naive, signature_puiseux,
    BrieskornExponents, PuiseuxPairs,
};

fn deep_pairs() -> PuiseuxPairs {
    PuiseuxPairs::new(vec![(3, 2), (7, 2), (15, 2), (67, 3)]).unwrap()
}

fn bench_lattice_counts(c: &mut Criterion) {
    let exponents = BrieskornExponents::new(533, 34, 55).unwrap();
    let mut group = c.benchmark_group("s_counts");
    group.bench_function("naive", |b| {
        b.iter(|| s_counts_naive(black_box(&exponents)))
    });
    group.bench_function("fast", |b| b.iter(|| s_counts_fast(black_box(&exponents))));
    #[cfg(feature = "parallel")]
    group.bench_function("fast_seq", |b| {
        b.iter(|| sigsurf_core::brieskorn::s_counts_fast_seq(black_box(&exponents)))
    });
    group.finish();
}

fn bench_resolution_eta(c: &mut Criterion) {
    let graph = pairs_to_resolution_graph(&deep_pairs()).unwrap();
    let mut group = c.benchmark_group("eta_resolution");
    group.bench_function("k30", |b| {
        b.iter(|| eta_resolution(black_box(&graph), black_box(30)).unwrap())
    });
    group.finish();
}

fn bench_signatures(c: &mut Criterion) {
    let pairs = deep_pairs();
    let mut group = c.benchmark_group("signature");
    group.bench_function("puiseux_deep_n5", |b| {
        b.iter(|| signature_puiseux(black_box(&pairs), black_box(5)).unwrap())
    });
    group.bench_function("brieskorn_533_34_55", |b| {
        let exponents = BrieskornExponents::new(533, 34, 55).unwrap();
        b.iter(|| brieskorn_signature(black_box(&exponents)))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_lattice_counts,
    bench_resolution_eta,
    bench_signatures
);
criterion_main!(benches);
