//! Benchmarks for the four hot paths: the Walsh-Hadamard transform, code
//! enumeration, the per-code syndrome-space divergence, and the exact
//! LPN-reduction joint law.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use codesmooth_core::*;

fn bench_wht(c: &mut Criterion) {
    let mut group = c.benchmark_group("walsh_hadamard");
    for n in [10u32, 14, 18] {
        let values: Vec<f64> = (0..1u64 << n).map(|i| (i as f64).sin()).collect();
        group.bench_with_input(BenchmarkId::from_parameter(n), &values, |b, values| {
            b.iter(|| {
                let mut v = values.clone();
                walsh_hadamard(&mut v).unwrap();
                black_box(v);
            })
        });
    }
    group.finish();
}

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_linear");
    for (n, k) in [(8usize, 4usize), (10, 3), (12, 2)] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("n{n}_k{k}")),
            &(n, k),
            |b, &(n, k)| {
                b.iter(|| {
                    black_box(enumerate_linear_codes(n, k, 2).unwrap().count());
                })
            },
        );
    }
    group.bench_function("self_dual_t4", |b| {
        b.iter(|| black_box(enumerate_self_dual_doubly_even(4).unwrap().len()))
    });
    group.finish();
}

fn bench_per_code_divergence(c: &mut Criterion) {
    let mut group = c.benchmark_group("per_code_divergence");
    let noise = NoiseModel::BernoulliProduct { r: 0.1 };
    for (n, k) in [(12usize, 6usize), (16, 8), (20, 10)] {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let code = sample_full_rank_code(n, k, &mut rng);
        let spectrum = NoiseSpectrum::of(&noise, n as u32).unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("n{n}_k{k}")),
            &(code, spectrum),
            |b, (code, spectrum)| {
                b.iter(|| black_box(per_code_divergence(code, spectrum, 1.5).unwrap()))
            },
        );
    }
    group.finish();
}

fn bench_reduction_joint(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduction_joint");
    for (n, k) in [(14usize, 6usize), (18, 8), (22, 10)] {
        let inst = sample_adp_instance(n, k, n / 4, 7).unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("n{n}_k{k}")),
            &inst,
            |b, inst| {
                b.iter(|| black_box(lpn::reduction_joint_pmfs(&inst.g, &inst.e, 0.1).unwrap()))
            },
        );
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_wht,
    bench_enumeration,
    bench_per_code_divergence,
    bench_reduction_joint
);
criterion_main!(benches);
