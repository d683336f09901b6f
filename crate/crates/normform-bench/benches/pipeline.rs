//! Benchmarks for the pipeline's hot paths: the admissibility scan, modular
//! unit powers at the exponent cap, the rigorous bound evaluations, and the
//! windowed brute-force search.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use normform::bounds;
use normform::oracle::{self, SearchWindow};
use normform::ring::{self, RingContext};
use normform::sieve;

fn bench_enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("sieve");
    g.sample_size(20);
    g.bench_function("enumerate_t2_full_m_range", |b| {
        b.iter(|| sieve::enumerate_candidates(black_box(2), black_box(2), black_box(225_676)))
    });
    g.bench_function("enumerate_t2_352_m_5000", |b| {
        b.iter(|| sieve::enumerate_candidates(black_box(2), black_box(352), black_box(5_000)))
    });
    g.finish();
}

fn bench_modular_power(c: &mut Criterion) {
    let ctx = RingContext::new(2).unwrap();
    let unit = ctx.unit();
    let p = normform::default_prime_set()[0];
    c.bench_function("pow_mod_prime_m_225676", |b| {
        b.iter(|| ring::pow_mod_prime(black_box(&unit), black_box(225_676), &ctx, p))
    });
}

fn bench_bounds(c: &mut Criterion) {
    let mut g = c.benchmark_group("bounds");
    g.sample_size(10);
    g.bench_function("derive_m_max_160", |b| b.iter(|| bounds::derive_m_max()));
    g.bench_function("eval_lambda1_boundary_160", |b| {
        b.iter(|| bounds::eval_lambda1(black_box(352), black_box(225_676), 160))
    });
    g.bench_function("laurent_lower_160", |b| {
        b.iter(|| bounds::laurent_lower(black_box(352), black_box(225_676), 160))
    });
    g.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(20);
    g.bench_function("brute_force_t5_b1000", |b| {
        b.iter(|| oracle::brute_force(black_box(5), &SearchWindow { t: 5, bound: 1000 }))
    });
    g.finish();
}

criterion_group!(benches, bench_enumeration, bench_modular_power, bench_bounds, bench_oracle);
criterion_main!(benches);
