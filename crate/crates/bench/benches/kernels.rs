use std::collections::BTreeMap;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nijenhuis::exactring::solve_linear;
use nijenhuis::extender::{solve_waves, ExtensionProblem, WaveSpec};
use nijenhuis::schouten::{jacobiator, schouten_bracket};
use nijenhuis_bench::{beta, beta_on_extension, dense_poly, square_system};

fn poly_mul(c: &mut Criterion) {
    let mut g = c.benchmark_group("poly_mul");
    for d in [4u32, 6, 8] {
        let p = dense_poly(4, d);
        g.bench_with_input(BenchmarkId::from_parameter(d), &p, |b, p| b.iter(|| p.mul(p)));
    }
    g.finish();
}

fn brackets(c: &mut Criterion) {
    let mut g = c.benchmark_group("schouten");
    for n in [3usize, 5] {
        let b = beta(n);
        g.bench_with_input(BenchmarkId::new("jacobiator_beta", n), &b, |bn, b| bn.iter(|| jacobiator(b).unwrap()));
    }
    let big = beta_on_extension();
    let (b1, b2) = (big.homogeneous_part(1), big.homogeneous_part(2));
    g.bench_function("beta1_beta2_on_78_vars", |bn| bn.iter(|| schouten_bracket(&b1, &b2).unwrap()));
    g.finish();
}

fn linear_solve(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_linear");
    for n in [10usize, 30] {
        let sys = square_system(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &sys, |b, s| b.iter(|| solve_linear(s)));
    }
    g.finish();
}

fn first_wave(c: &mut Criterion) {
    let p = ExtensionProblem::new(3, &BTreeMap::new()).unwrap();
    let mut g = c.benchmark_group("extension");
    g.sample_size(10);
    g.bench_function("support_wave_z3", |b| b.iter(|| solve_waves(&p, &[WaveSpec::BetaSupport]).unwrap()));
    g.finish();
}

criterion_group!(benches, poly_mul, brackets, linear_solve, first_wave);
criterion_main!(benches);
