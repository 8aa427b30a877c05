use cplx_core::harness::{check_closed_base, fuzz_campaign, tabulate, ArgSpec, ProbeConfig};
use cplx_core::{corpus, denote, eval, translate, SemEnv, TargetExpr, ValueEnv};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn sort_descending(n: i64) -> TargetExpr {
    TargetExpr::app(corpus::INS_SORT.expr(), TargetExpr::list((0..n).rev()))
}

fn evaluation(c: &mut Criterion) {
    let mut group = c.benchmark_group("eval/ins_sort");
    for n in [8, 32, 64] {
        let e = sort_descending(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &e, |b, e| {
            b.iter(|| eval(black_box(e), &ValueEnv::new(), u64::MAX).unwrap())
        });
    }
    group.finish();
}

fn translation(c: &mut Criterion) {
    for f in corpus::ALL {
        let e = f.expr();
        c.bench_function(&format!("translate/{}", f.name), |b| {
            b.iter(|| translate(black_box(&e)))
        });
    }
    let e = sort_descending(32);
    let t = translate(&e);
    c.bench_function("denote/ins_sort_32", |b| {
        b.iter(|| denote(black_box(&t), &SemEnv::new()).unwrap())
    });
}

fn harness(c: &mut Criterion) {
    let cfg = ProbeConfig::default();
    let e = sort_descending(16);
    c.bench_function("check/ins_sort_16", |b| {
        b.iter(|| check_closed_base(black_box(&e), &cfg).unwrap())
    });
    let ins = corpus::INS.expr();
    let spec = [ArgSpec::Fixed { cost: 1, pot: 1 }, ArgSpec::Sweep];
    c.bench_function("tabulate/ins_0_64", |b| {
        b.iter(|| tabulate(black_box(&ins), &spec, 0..65).unwrap())
    });
    let campaign = ProbeConfig {
        trials: 200,
        seed: 1,
        ..ProbeConfig::default()
    };
    let mut group = c.benchmark_group("fuzz");
    group.sample_size(10);
    group.bench_function("200_trials", |b| {
        b.iter(|| fuzz_campaign(black_box(&campaign)))
    });
    group.finish();
}

criterion_group!(benches, evaluation, translation, harness);
criterion_main!(benches);
