use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ddl_bench::parabola_point;
use ddl_core::exactalg::{rat, SvpStats};
use ddl_core::flow::{dirichlet_check, svp_fast};
use ddl_core::Matrix;

fn lll(c: &mut Criterion) {
    let mut group = c.benchmark_group("lll_reduce");
    for j in [4u32, 12, 20] {
        let point = parabola_point(j);
        group.bench_with_input(BenchmarkId::from_parameter(j), &point, |b, p| {
            b.iter(|| p.basis.lll_reduce(&rat(3, 4)).unwrap())
        });
    }
    group.finish();
}

fn svp(c: &mut Criterion) {
    let mut group = c.benchmark_group("shortest_vector_sup");
    for j in [4u32, 12, 20] {
        let point = parabola_point(j);
        group.bench_with_input(BenchmarkId::new("exact", j), &point, |b, p| b.iter(|| p.basis.shortest_vector_sup().unwrap()));
        group.bench_with_input(BenchmarkId::new("fast", j), &point, |b, p| {
            b.iter(|| svp_fast(p, &rat(1, 2), &SvpStats::default()).unwrap())
        });
    }
    group.finish();
}

fn dirichlet(c: &mut Criterion) {
    let phi = Matrix::new(2, 2, vec![rat(1, 3), rat(5, 7), rat(-2, 11), rat(9, 13)]).unwrap();
    c.bench_function("dirichlet_check_2x2_N64", |b| {
        b.iter(|| dirichlet_check(black_box(&phi), &rat(64, 1), &rat(1, 2)).unwrap())
    });
}

criterion_group!(benches, lll, svp, dirichlet);
criterion_main!(benches);
