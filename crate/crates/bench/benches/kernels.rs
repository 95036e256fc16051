use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cycpres_core::{abelianization, circulant_resultant, cyclotomic, determinant, poly_f, resultant, PrishParams};

fn tuple(n: u64) -> PrishParams {
    // s = r - 1 with a nontrivial offset keeps the matrix dense and nonsingular.
    PrishParams::new(n / 2 + 1, n, 3, n / 2, 1).unwrap()
}

fn bench_det(c: &mut Criterion) {
    let mut group = c.benchmark_group("circulant_det");
    for n in [13u64, 25, 35, 60] {
        let p = tuple(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| b.iter(|| determinant(black_box(p))));
    }
    group.finish();
}

fn bench_snf(c: &mut Criterion) {
    let mut group = c.benchmark_group("abelianization");
    group.sample_size(20);
    for n in [13u64, 25, 35] {
        // The Fibonacci-type tuple has a large non-unit determinant, so the full Smith form runs.
        let p = PrishParams::new(2, n, 3, 1, 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| b.iter(|| abelianization(black_box(p))));
    }
    group.finish();
}

fn bench_resultant(c: &mut Criterion) {
    let mut group = c.benchmark_group("resultant_vs_cyclotomic");
    for n in [13u64, 25, 35, 60] {
        let f = poly_f(n / 2 + 1, 3).unwrap().fold_cyclic(n as usize);
        let phi = cyclotomic(n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &(f, phi), |b, (f, phi)| {
            b.iter(|| resultant(black_box(f), black_box(phi)))
        });
    }
    group.finish();
}

fn bench_circulant_resultant(c: &mut Criterion) {
    let mut group = c.benchmark_group("circulant_resultant");
    for n in [13usize, 25, 35] {
        let f = tuple(n as u64).cyclic_poly();
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| circulant_resultant(black_box(f), n))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_det, bench_snf, bench_resultant, bench_circulant_resultant);
criterion_main!(benches);
