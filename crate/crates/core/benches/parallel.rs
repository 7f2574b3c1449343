//! Compares the parallel batch verification paths against their sequential
//! fallbacks: the family-table verification and a batch of local
//! multiplicity computations.

use criterion::{criterion_group, criterion_main, Criterion};

use wblow::fano::{builtin_dataset, verify_all, verify_all_seq};
use wblow::localmult::local_multiplicity;
use wblow::sampling::{certified_system, seeded_rng};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

fn bench_family_verification(c: &mut Criterion) {
    let ds = builtin_dataset();
    let mut group = c.benchmark_group("families_verify");
    group.bench_function("parallel_default", |b| {
        b.iter(|| verify_all(std::hint::black_box(ds)).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| verify_all_seq(std::hint::black_box(ds)).unwrap())
    });
    group.finish();
}

fn bench_batch_multiplicity(c: &mut Criterion) {
    let mut rng = seeded_rng(2024);
    let systems: Vec<_> = (0..24)
        .map(|_| certified_system(&mut rng, 2, 30, 500).expect("sample").0)
        .collect();
    let mut group = c.benchmark_group("batch_multiplicity");
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| {
            std::hint::black_box(&systems)
                .par_iter()
                .map(|s| local_multiplicity(s, 30).unwrap())
                .count()
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            std::hint::black_box(&systems)
                .iter()
                .map(|s| local_multiplicity(s, 30).unwrap())
                .count()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_family_verification, bench_batch_multiplicity);
criterion_main!(benches);
