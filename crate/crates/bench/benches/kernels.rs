use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use logres_bench::{modular, rational};
use logres_core::combinatorics::char_poly;
use logres_core::combinatorics::{euler_restriction, multiplicity_of};
use logres_core::logmod::{d_piece, exponents2};

fn bench_char_poly(c: &mut Criterion) {
    let a = rational("ex45");
    c.bench_function("char_poly/ex45", |b| b.iter(|| char_poly(black_box(&a))));
}

fn bench_log_pieces(c: &mut Criterion) {
    let mut group = c.benchmark_group("d_piece/ex433");
    let q = rational("ex433");
    let p = modular("ex433", 1009);
    for d in [3u32, 5, 7] {
        group.bench_with_input(BenchmarkId::new("QQ", d), &d, |b, &d| {
            b.iter(|| d_piece(black_box(&q), d))
        });
        group.bench_with_input(BenchmarkId::new("GF(1009)", d), &d, |b, &d| {
            b.iter(|| d_piece(black_box(&p), d))
        });
    }
    group.finish();
}

fn bench_multiarrangement_exponents(c: &mut Criterion) {
    let a = rational("ex433");
    let h = 0;
    let r = euler_restriction(&a, h).unwrap();
    let m = multiplicity_of(&r);
    c.bench_function("exponents2/ex433", |b| {
        b.iter(|| exponents2(a.field(), black_box(&r.lines), &m))
    });
}

criterion_group!(
    benches,
    bench_char_poly,
    bench_log_pieces,
    bench_multiarrangement_exponents
);
criterion_main!(benches);
