use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use sponge_bench::two_regime_points;
use sponge_core::{fit_bimodal, fractal_dimension, parse, Fractal};

fn grossone(c: &mut Criterion) {
    let x = parse("1 - (20/27)^(g-1) + 3*g^2").unwrap();
    let y = parse("g^2 - 2*g + (8/9)^g").unwrap();
    let e1 = parse("2*(20/27)^(g-1) + 5").unwrap();
    let e2 = parse("(3/2)^(2*g) - 1").unwrap();
    c.bench_function("gross_add", |b| b.iter(|| black_box(&x).add(black_box(&y))));
    c.bench_function("gross_mul_exp", |b| {
        b.iter(|| black_box(&e1).mul(black_box(&e2)).unwrap())
    });
    c.bench_function("gross_cmp", |b| b.iter(|| black_box(&x).cmp(black_box(&y))));
    c.bench_function("parse", |b| {
        b.iter(|| parse(black_box("1 - (20/27)^(g-1) + 3*g^2 - g/4")).unwrap())
    });
}

fn dimension(c: &mut Criterion) {
    let mut g = c.benchmark_group("fractal_dimension");
    for places in [9u32, 34, 100] {
        g.bench_function(places.to_string(), |b| {
            b.iter(|| fractal_dimension(Fractal::Sponge, black_box(places)))
        });
    }
    g.finish();
}

fn fitting(c: &mut Criterion) {
    let mut g = c.benchmark_group("fit_bimodal");
    for per_side in [15usize, 100, 500] {
        let (params, pts) = two_regime_points(per_side, 2.9, 2.5);
        g.bench_function(per_side.to_string(), |b| {
            b.iter(|| fit_bimodal(black_box(&pts), &params).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, grossone, dimension, fitting);
criterion_main!(benches);
