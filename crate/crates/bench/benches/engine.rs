use cfladder_bench::cbrt;
use cfladder_core::{build_ladder, expand, verify_ladder, BigInt};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn expansion(c: &mut Criterion) {
    let x = cbrt(2);
    let mut group = c.benchmark_group("expand_cbrt2");
    group.sample_size(10);
    for terms in [100usize, 500, 1000] {
        group.bench_with_input(BenchmarkId::from_parameter(terms), &terms, |b, &t| {
            b.iter(|| expand(black_box(&x), t).unwrap())
        });
    }
    group.finish();
}

fn ladder(c: &mut Criterion) {
    let m = BigInt::from(2);
    let x = cbrt(2);
    let y = x.reciprocal_scale(&m).unwrap();
    let (ex, ey) = (expand(&x, 1001).unwrap(), expand(&y, 1001).unwrap());
    let ladder = build_ladder(ex.clone(), ey.clone(), &m).unwrap();

    let mut group = c.benchmark_group("ladder_cbrt2_m2_1000");
    group.sample_size(10);
    group.bench_function("build", |b| {
        b.iter(|| build_ladder(ex.clone(), ey.clone(), black_box(&m)).unwrap())
    });
    group.bench_function("verify", |b| b.iter(|| verify_ladder(black_box(&ladder))));
    group.finish();
}

criterion_group!(benches, expansion, ladder);
criterion_main!(benches);
