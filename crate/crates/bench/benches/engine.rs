use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use cms_core::coeff::{poly_gcd, Bindings, CoeffFrac};
use cms_core::eigen::{jack, jacobi, operator_matrix};
use cms_core::infinite::{Family, InfOperator};
use cms_core::verify::{run, Suite, VerifyConfig};
use cms_core::Partition;

fn coefficients(c: &mut Criterion) {
    let a: CoeffFrac = "(k + 1)^3*(p - 2*q + h)^2*(k - p0)".parse().unwrap();
    let b: CoeffFrac = "(k + 1)^2*(p - 2*q + h)*(k + p0)^2".parse().unwrap();
    let (a, b) = (a.numer().clone(), b.numer().clone());
    c.bench_function("gcd k,p,q,h,p0", |bench| bench.iter(|| poly_gcd(black_box(&a), black_box(&b))));
    let x: CoeffFrac = "(2*k + p)/(k - 1)".parse().unwrap();
    let y: CoeffFrac = "(k*p + 3)/(k + p0)".parse().unwrap();
    c.bench_function("frac add", |bench| bench.iter(|| black_box(&x) + black_box(&y)));
}

fn matrices(c: &mut Criterion) {
    let op = InfOperator::new(Family::TrigA);
    c.bench_function("trigA matrix degree 6", |bench| bench.iter(|| operator_matrix(black_box(&op), 6).unwrap()));
    let op = InfOperator::new(Family::TrigBC);
    c.bench_function("trigBC matrix degree 3", |bench| bench.iter(|| operator_matrix(black_box(&op), 3).unwrap()));
}

fn eigenfunctions(c: &mut Criterion) {
    let label: Partition = "3,2,1".parse().unwrap();
    let b = Bindings::new();
    c.bench_function("jack 3,2,1 symbolic", |bench| bench.iter(|| jack(black_box(&label), &b).unwrap()));
    let label: Partition = "2,1".parse().unwrap();
    c.bench_function("jacobi 2,1 symbolic", |bench| bench.iter(|| jacobi(black_box(&label), &b).unwrap()));
}

fn suites(c: &mut Criterion) {
    let cfg = VerifyConfig {
        max_degree: 3,
        n_max: Some(3),
        ..Default::default()
    };
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    group.bench_function("diagram-trigA", |bench| bench.iter(|| run(Suite::DiagramTrigA, &cfg).unwrap()));
    group.bench_function("fourier", |bench| bench.iter(|| run(Suite::Fourier, &VerifyConfig::default()).unwrap()));
    group.finish();
}

criterion_group!(benches, coefficients, matrices, eigenfunctions, suites);
criterion_main!(benches);
