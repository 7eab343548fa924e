use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use rmblock_core::limits::{self, LimitKind};
use rmblock_core::model::validate_profile;
use rmblock_core::specfun::{self, GParams, Rational};
use rmblock_core::{dyson, sampler, susy};
use std::hint::black_box;

type C = Complex64;

fn bench_eigensolver(c: &mut Criterion) {
    let p = validate_profile(&[vec![1.0, 1.0], vec![1.0, 0.0]]).unwrap();
    let mut group = c.benchmark_group("eigenvalues");
    for n in [32usize, 64] {
        let h = sampler::sample_block_matrix(&p, n, 7);
        group.bench_function(format!("k2_n{n}"), |b| {
            b.iter(|| sampler::eigenvalues(black_box(&h)).unwrap())
        });
    }
    group.finish();
}

fn bench_dyson(c: &mut Criterion) {
    let p = validate_profile(&[
        vec![0.0, 1.0, 1.0],
        vec![1.0, 1.0, 0.0],
        vec![1.0, 0.0, 0.0],
    ])
    .unwrap();
    c.bench_function("solve_dyson_k3_near_origin", |b| {
        b.iter(|| {
            dyson::solve_dyson(black_box(&p), C::new(1e-5, 1e-7), 1e-13, 50_000).unwrap()
        })
    });
}

fn bench_susy(c: &mut Criterion) {
    let p = validate_profile(&[vec![1.0, 1.0], vec![1.0, 0.0]]).unwrap();
    let z = C::new(0.0, 0.3);
    let q = susy::default_quadrature(&p, 8, z).unwrap();
    c.bench_function("finite_n_resolvent_k2_n8", |b| {
        b.iter(|| susy::finite_n_resolvent(black_box(&p), 8, z, &q).unwrap())
    });
}

fn bench_specfun(c: &mut Criterion) {
    c.bench_function("bessel_k0_midzone", |b| {
        b.iter(|| specfun::bessel_k(0, black_box(C::new(6.0, 3.0))).unwrap())
    });
    let params = GParams {
        b: [Rational::new(0, 1), Rational::new(1, 2), Rational::new(1, 2)],
        argument: C::new(2.5, 0.0),
    };
    c.bench_function("meijer_g_303", |b| {
        b.iter(|| specfun::meijer_g_303(black_box(&params)).unwrap())
    });
}

fn bench_limits(c: &mut Criterion) {
    c.bench_function("limit_density_k2", |b| {
        b.iter(|| limits::limit_density(LimitKind::K2, black_box(1.7)).unwrap())
    });
    c.bench_function("limit_density_k3", |b| {
        b.iter(|| limits::limit_density(LimitKind::K3, black_box(1.7)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_eigensolver,
    bench_dyson,
    bench_susy,
    bench_specfun,
    bench_limits
);
criterion_main!(benches);
