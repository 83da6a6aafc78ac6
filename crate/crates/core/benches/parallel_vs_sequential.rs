use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use stperiod_core::coxeter::{build_affine_system, growth_coefficients_with, Family, DEFAULT_ELEMENT_BUDGET};
use stperiod_core::exec::Exec;
use stperiod_core::residue::{affine_square_moves, build_fields, orbits_under};
use stperiod_core::tree::{build_tree_pair, iwahori_cocycle, verify_harmonic_with};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn growth(c: &mut Criterion) {
    let mut group = c.benchmark_group("growth");
    group.sample_size(10);
    for (family, rank, k) in [(Family::A, 3, 14), (Family::C, 3, 12), (Family::F, 4, 8)] {
        let sys = build_affine_system(family, rank).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("{family}{rank}-K{k}")), &sys, |b, sys| {
                b.iter(|| growth_coefficients_with(black_box(sys), k, DEFAULT_ELEMENT_BUDGET, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn harmonicity(c: &mut Criterion) {
    let mut group = c.benchmark_group("harmonicity");
    group.sample_size(10);
    for (q, depth) in [(2u64, 6usize), (3, 4)] {
        let tree = build_tree_pair(q, depth).unwrap();
        let cocycle = iwahori_cocycle(&tree);
        for (name, exec) in MODES {
            group.bench_function(BenchmarkId::new(name, format!("q{q}-depth{depth}")), |b| {
                b.iter(|| verify_harmonic_with(black_box(&tree), black_box(&cocycle), exec))
            });
        }
    }
    group.finish();
}

fn orbits(c: &mut Criterion) {
    let mut group = c.benchmark_group("orbits");
    for (p, n) in [(2u32, 4u32), (3, 2)] {
        let fields = build_fields(p, n).unwrap();
        let moves = affine_square_moves(&fields);
        for (name, exec) in MODES {
            group.bench_function(BenchmarkId::new(name, format!("q{}", fields.q)), |b| {
                b.iter(|| orbits_under(black_box(&fields), &moves, "affine-square", exec))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, growth, harmonicity, orbits);
criterion_main!(benches);
