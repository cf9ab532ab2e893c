use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ctqmc_bench::{geometries, pq_basis, pq_channel};
use ctqmc_core::analysis::optimal_initial_state;
use ctqmc_core::generators::{Boundary, Geometry};
use ctqmc_core::kernels::{evolve_oracle, km_quadrature_oracle, scalar_kernel, site_probability, KernelRequest};
use ctqmc_core::QubitDensity;

fn scalar(c: &mut Criterion) {
    let mut group = c.benchmark_group("scalar_kernel");
    for (name, g) in geometries() {
        let req = KernelRequest::new(g, 1.0 / 3.0, 3, 1, 5.0).unwrap();
        group.bench_function(name, |b| b.iter(|| scalar_kernel(black_box(&req))));
    }
    group.finish();
}

fn quadrature(c: &mut Criterion) {
    let req = KernelRequest::new(Geometry::HalfLine(Boundary::Reflecting), 1.0 / 3.0, 3, 1, 5.0).unwrap();
    c.bench_function("km_quadrature_oracle", |b| b.iter(|| km_quadrature_oracle(black_box(&req))));
}

fn closed_form_vs_oracle(c: &mut Criterion) {
    let basis = pq_basis();
    let ch = pq_channel();
    let g = Geometry::HalfLine(Boundary::Absorbing);
    let rho = QubitDensity::uniform_plus();
    let mut group = c.benchmark_group("site_probability");
    group.bench_function("closed_form", |b| b.iter(|| site_probability(&basis, &g, &rho, 1, 3, black_box(5.0))));
    group.sample_size(20);
    group.bench_function("expm_oracle", |b| b.iter(|| evolve_oracle(&ch, &g, &rho, 1, black_box(5.0), 60)));
    group.finish();
}

fn optimize(c: &mut Criterion) {
    let basis = pq_basis();
    let goal =
        ctqmc_core::GoalState::normalized([ctqmc_core::linalg::r(0.5), ctqmc_core::linalg::r(0.75f64.sqrt())]).unwrap();
    let g = Geometry::Line;
    c.bench_function("optimal_initial_state", |b| {
        b.iter(|| optimal_initial_state(&basis, &g, 2, 0, black_box(3.0), &goal))
    });
}

criterion_group!(benches, scalar, quadrature, closed_form_vs_oracle, optimize);
criterion_main!(benches);
