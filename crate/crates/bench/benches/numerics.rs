use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use moddeg_bench::sample_curves;
use moddeg_core::report::{process_record, CurveRecord, ProcessOptions};
use moddeg_core::{curve, lvalue, periods, special, suite, zero_free};

fn bench_periods(c: &mut Criterion) {
    let invs: Vec<_> = sample_curves()
        .iter()
        .map(|e| curve::derive_invariants(e).unwrap())
        .collect();
    c.bench_function("lemma1_check/5 curves", |b| {
        b.iter(|| {
            for inv in &invs {
                black_box(periods::lemma1_check(inv).unwrap());
            }
        })
    });
    c.bench_function("agm", |b| {
        b.iter(|| periods::agm(black_box(1.0), black_box(0.3)).unwrap())
    });
}

fn bench_special(c: &mut Criterion) {
    c.bench_function("digamma", |b| {
        b.iter(|| special::digamma(black_box(1.459)).unwrap())
    });
    c.bench_function("zeta_real(1.5)", |b| {
        b.iter(|| special::zeta_real(black_box(1.5)).unwrap())
    });
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("lemma4_error_integral", |b| {
        b.iter(|| special::lemma4_error_integral().unwrap())
    });
    g.finish();
}

fn bench_certification(c: &mut Criterion) {
    let n2 = zero_free::SymPowerConductors::supplied(142);
    c.bench_function("certify_noncm(142)", |b| {
        b.iter(|| zero_free::certify_noncm(black_box(&n2)).unwrap())
    });
    c.bench_function("certify_cm_zeta3(142)", |b| {
        b.iter(|| zero_free::certify_cm_zeta3(black_box(&n2)).unwrap())
    });
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("run_verification(142)", |b| {
        b.iter(|| suite::run_verification(black_box(142)))
    });
    g.finish();
}

fn bench_arithmetic(c: &mut Criterion) {
    let e = &sample_curves()[3];
    c.bench_function("trace_of_frobenius(5077a1, 10007)", |b| {
        b.iter(|| curve::trace_of_frobenius(e, black_box(10_007)).unwrap())
    });
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("symsq_value_estimate(37a1, 1000)", |b| {
        b.iter(|| lvalue::symsq_value_estimate(&sample_curves()[1], 1000).unwrap())
    });
    g.finish();
    let rec =
        CurveRecord::parse(r#"{"label":"389a1","a":[0,1,1,-2,0],"conductor":389,"deg_phi":40}"#)
            .unwrap();
    let opts = ProcessOptions::default();
    c.bench_function("process_record(389a1)", |b| {
        b.iter(|| process_record(black_box(&rec), &opts).unwrap())
    });
}

criterion_group!(
    benches,
    bench_periods,
    bench_special,
    bench_certification,
    bench_arithmetic
);
criterion_main!(benches);
