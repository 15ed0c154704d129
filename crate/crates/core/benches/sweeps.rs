//! Sequential vs. rayon throughput for the batch workloads: a sweep of
//! `rho_n` over random inputs and the full verification run.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gwcorr::cancel::{rho_n, RhoOptions};
use gwcorr::corr::{dot_expand, FormalSum};
use gwcorr::exactalg::BaseField;
use gwcorr::{par, random, verify};

fn sweep_inputs(field: BaseField, count: usize) -> Vec<FormalSum> {
    let mut rng = random::rng(7);
    (0..count)
        .map(|_| dot_expand(&random::boxtimes_input(field, 2, &mut rng).unwrap()).unwrap())
        .collect()
}

fn rho_sweep(c: &mut Criterion) {
    let opts = RhoOptions::default();
    let mut group = c.benchmark_group("rho_sweep");
    group.sample_size(10);
    for field in [BaseField::Rationals, BaseField::Prime(7)] {
        let inputs = sweep_inputs(field, 16);
        let run = |s: &FormalSum| rho_n(field, s, 3, &opts).unwrap();
        group.bench_with_input(BenchmarkId::new("sequential", field), &inputs, |b, xs| {
            b.iter(|| par::map_seq(xs, run))
        });
        group.bench_with_input(BenchmarkId::new("parallel", field), &inputs, |b, xs| {
            b.iter(|| par::map(xs, run))
        });
    }
    group.finish();
}

fn verify_all(c: &mut Criterion) {
    let cfg = verify::VerifyConfig::default();
    let ids: Vec<u8> = verify::CHECKS.iter().map(|c| c.0).collect();
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| par::map_seq(&ids, |&id| verify::run_check(id, &cfg).unwrap()))
    });
    group.bench_function("parallel", |b| b.iter(|| verify::run_all(&cfg)));
    group.finish();
}

criterion_group!(benches, rho_sweep, verify_all);
criterion_main!(benches);
