//! Scanner and classification benchmarks across worker counts.
//!
//! With the default `parallel` feature the groups sweep 1/2/4/max workers,
//! so one run shows the scaling of the rayon path against its own
//! single-worker baseline. Building with `--no-default-features` benches
//! the sequential fallback under the same bench names:
//!
//!   cargo bench -p affinv
//!   cargo bench -p affinv --no-default-features

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use affinv::field::Field;
use affinv::par;
use affinv::sbox::{build_aes_sbox, SBox};
use affinv::scan::{scan_affine_images, scan_invariant, ScanOptions};
use affinv::stable;

fn worker_counts() -> Vec<usize> {
    if cfg!(feature = "parallel") {
        let max = par::max_workers();
        let mut counts: Vec<usize> = [1usize, 2, 4, max]
            .into_iter()
            .filter(|&w| w <= max)
            .collect();
        counts.dedup();
        counts
    } else {
        vec![1]
    }
}

fn bench_aes_invariant_scan(c: &mut Criterion) {
    let sbox = build_aes_sbox();
    let mut group = c.benchmark_group("aes_invariant_scan_7_9m");
    group.sample_size(10);
    for w in worker_counts() {
        group.bench_with_input(BenchmarkId::new("workers", w), &w, |b, &w| {
            b.iter(|| {
                par::with_workers(Some(w), || {
                    black_box(scan_invariant(&sbox, &ScanOptions::default()).unwrap())
                })
            });
        });
    }
    group.finish();
}

fn bench_gf256_image_scan(c: &mut Criterion) {
    let field = Field::new(2, 8, None).unwrap();
    let inv = SBox::inversion(&field);
    let mut group = c.benchmark_group("gf256_image_scan");
    group.sample_size(10);
    for w in worker_counts() {
        group.bench_with_input(BenchmarkId::new("workers", w), &w, |b, &w| {
            b.iter(|| {
                par::with_workers(Some(w), || {
                    black_box(scan_affine_images(&inv, &ScanOptions::default()).unwrap())
                })
            });
        });
    }
    group.finish();
}

fn bench_classification(c: &mut Criterion) {
    let field = Field::new(2, 6, None).unwrap();
    let mut group = c.benchmark_group("classify_gf2_6");
    for w in worker_counts() {
        group.bench_with_input(BenchmarkId::new("workers", w), &w, |b, &w| {
            b.iter(|| {
                par::with_workers(Some(w), || black_box(stable::brute_force(&field).unwrap()))
            });
        });
    }
    group.finish();
}

fn bench_field_ops(c: &mut Criterion) {
    let field = Field::new(2, 8, Some(&[1, 1, 0, 1, 1, 0, 0, 0, 1])).unwrap();
    let a = field.from_value(0x57).unwrap();
    let b = field.from_value(0xC8).unwrap();
    c.bench_function("gf256_mul", |bench| {
        bench.iter(|| black_box(&a) * black_box(&b))
    });
    c.bench_function("gf256_inv0", |bench| bench.iter(|| black_box(&b).inv0()));
}

criterion_group!(
    benches,
    bench_aes_invariant_scan,
    bench_gf256_image_scan,
    bench_classification,
    bench_field_ops
);
criterion_main!(benches);
