//! Sequential versus rayon-backed chunk processing.
//!
//! Without the `parallel` feature both executors run sequentially, which makes
//! the comparison a control.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use esncrypt::analysis::CorpusKind;
use esncrypt::cipher::{decrypt_with, encrypt_with};
use esncrypt::keygen::{generate_key, KeyParams};
use esncrypt::parallel::Executor;

const SIZES: [usize; 2] = [2_000, 8_000];

fn executors() -> [(&'static str, Executor); 2] {
    [
        ("sequential", Executor::sequential()),
        ("parallel", Executor::new(0).expect("worker pool")),
    ]
}

fn encrypt_bench(c: &mut Criterion) {
    let key = generate_key(&KeyParams::with_seed(1)).unwrap();
    let mut group = c.benchmark_group("encrypt");
    group.sample_size(10);
    for size in SIZES {
        let msg = CorpusKind::Text.generate(size, 1);
        group.throughput(Throughput::Bytes(size as u64));
        for (name, exec) in executors() {
            group.bench_with_input(BenchmarkId::new(name, size), &msg, |b, msg| {
                b.iter(|| encrypt_with(&key, black_box(msg), &exec).unwrap())
            });
        }
    }
    group.finish();
}

fn decrypt_bench(c: &mut Criterion) {
    let key = generate_key(&KeyParams::with_seed(1)).unwrap();
    let mut group = c.benchmark_group("decrypt");
    group.sample_size(10);
    for size in SIZES {
        let msg = CorpusKind::Text.generate(size, 1);
        let ct = encrypt_with(&key, &msg, &Executor::sequential()).unwrap();
        group.throughput(Throughput::Bytes(size as u64));
        for (name, exec) in executors() {
            group.bench_with_input(BenchmarkId::new(name, size), &ct, |b, ct| {
                b.iter(|| decrypt_with(&key, black_box(ct), &exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, encrypt_bench, decrypt_bench);
criterion_main!(benches);
