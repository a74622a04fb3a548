use algdyn::harmonic::fix_row;
use algdyn::{enumerate_hk, scan_radius, ExponentVector, LeafCheck, Property, Q, DEFAULT_CAP};
use algdyn_bench::stock;
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn theta(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn enumeration(c: &mut Criterion) {
    let x2x3 = stock("x2x3");
    let fib = stock("fibonacci");
    let led = stock("ledrappier");
    c.bench_function("enumerate x2x3 theta=36", |b| b.iter(|| enumerate_hk(&x2x3, 2, black_box(&theta(36)), DEFAULT_CAP).unwrap()));
    c.bench_function("enumerate fibonacci theta=16", |b| b.iter(|| enumerate_hk(&fib, 4, black_box(&theta(16)), DEFAULT_CAP).unwrap()));
    c.bench_function("enumerate ledrappier theta=8", |b| b.iter(|| enumerate_hk(&led, 3, black_box(&theta(8)), DEFAULT_CAP).unwrap()));
}

fn scans(c: &mut Criterion) {
    let x2x3 = stock("x2x3");
    let h = enumerate_hk(&x2x3, 1, &theta(6), DEFAULT_CAP).unwrap();
    let check = LeafCheck { sys: &x2x3, set: &h };
    for p in [Property::I, Property::IiStrong] {
        c.bench_function(&format!("scan x2x3 theta=6 window=12 {p}"), |b| {
            b.iter(|| scan_radius(&check, 1, &theta(6), p, black_box(12.0)).unwrap())
        });
    }
}

fn fix_counts(c: &mut Criterion) {
    let x2x3 = stock("x2x3");
    let fib = stock("fibonacci");
    c.bench_function("fix row x2x3 (5,-3)", |b| b.iter(|| fix_row(&x2x3, black_box(&ExponentVector(vec![5, -3]))).unwrap()));
    c.bench_function("fix row fibonacci n=40", |b| b.iter(|| fix_row(&fib, black_box(&ExponentVector(vec![40]))).unwrap()));
}

criterion_group!(benches, enumeration, scans, fix_counts);
criterion_main!(benches);
