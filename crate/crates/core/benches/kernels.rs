//! Benchmarks for the data-parallel kernels.
//!
//! The `exec_map` group contrasts the rayon path against the sequential
//! fallback inside a single build; the remaining groups measure the public
//! entry points with whatever the `parallel` feature provides. Run
//! `cargo bench -p tsolve-core` and
//! `cargo bench -p tsolve-core --no-default-features` to compare end to end.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

use tsolve_core::lp::{
    build_a_generic, build_a_symmetric_with, cyclic_orbit_table, symmetric_orbit_table,
    threshold_scan, ScanOptions,
};
use tsolve_core::orbits::orbits_bitstrings;
use tsolve_core::perm::PermutationGroup;
use tsolve_core::sim::gram_matrix;
use tsolve_core::{exec, Angle, StateVector};

fn phase_bucket_workload(len: usize, mask: u64) -> impl Fn(usize) -> Complex64 + Sync + Send {
    move |i| {
        let ones = (i as u64 & mask).count_ones() as f64;
        Complex64::cis(0.37 * ones) * (1.0 / len as f64)
    }
}

fn bench_exec_map(c: &mut Criterion) {
    let mut group = c.benchmark_group("exec_map");
    for exp in [16usize, 20] {
        let len = 1usize << exp;
        let f = phase_bucket_workload(len, 0b1011_0110_1001);
        group.bench_with_input(BenchmarkId::new("parallel", exp), &len, |b, &len| {
            b.iter(|| exec::map_indexed(len, &f))
        });
        group.bench_with_input(BenchmarkId::new("sequential", exp), &len, |b, &len| {
            b.iter(|| exec::map_indexed_seq(len, &f))
        });
    }
    group.finish();
}

fn flat_state(n: usize) -> StateVector {
    let dim = 1usize << n;
    let amp = Complex64::new((dim as f64).sqrt().recip(), 0.0);
    StateVector::from_amplitudes(n, vec![amp; dim]).unwrap()
}

fn bench_gram(c: &mut Criterion) {
    let mut group = c.benchmark_group("gram_matrix");
    group.sample_size(20);
    let theta = Angle::new(2.0).unwrap();
    let sym = symmetric_orbit_table(9, 4).unwrap();
    let psi9 = flat_state(9);
    group.bench_function("sym_n9_m4", |b| {
        b.iter(|| gram_matrix(&psi9, &sym.trajectories, theta).unwrap())
    });
    let cyc = cyclic_orbit_table(14, 7).unwrap();
    let psi14 = flat_state(14);
    group.bench_function("cyc_n14_m7", |b| {
        b.iter(|| gram_matrix(&psi14, &cyc.trajectories, theta).unwrap())
    });
    group.finish();
}

fn bench_matrix_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("matrix_build");
    let theta = Angle::new(2.5).unwrap();
    let cyc = cyclic_orbit_table(12, 4).unwrap();
    group.bench_function("generic_cyc_n12", |b| {
        b.iter(|| build_a_generic(&cyc, theta).unwrap())
    });
    let sym = symmetric_orbit_table(12, 6).unwrap();
    group.bench_function("closed_form_sym_n12", |b| {
        b.iter(|| build_a_symmetric_with(&sym, theta).unwrap())
    });
    group.finish();
}

fn bench_orbits(c: &mut Criterion) {
    let mut group = c.benchmark_group("orbit_enumeration");
    group.sample_size(20);
    group.bench_function("cyclic_strings_n16", |b| {
        let g = PermutationGroup::cyclic(16).unwrap();
        b.iter(|| orbits_bitstrings(&g, 16).unwrap())
    });
    group.finish();
}

fn bench_threshold(c: &mut Criterion) {
    let mut group = c.benchmark_group("threshold_scan");
    group.sample_size(10);
    let table = symmetric_orbit_table(10, 5).unwrap();
    let opts = ScanOptions {
        steps: 128,
        ..ScanOptions::default()
    };
    group.bench_function("sym_n10_half", |b| {
        b.iter(|| threshold_scan(&|t| build_a_symmetric_with(&table, t), &opts).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_exec_map,
    bench_gram,
    bench_matrix_build,
    bench_orbits,
    bench_threshold
);
criterion_main!(benches);
