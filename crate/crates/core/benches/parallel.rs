//! Sequential against rayon execution for the two data-parallel paths:
//! oracle lattice enumeration and batch solving of independent instances.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use multiobj::algorithms::AlgorithmConfig;
use multiobj::batch::{solve_many, Execution};
use multiobj::driver::MetaSolver;
use multiobj::instances::seeded_knapsack;
use multiobj::oracle::enumerate_frontier_with;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn oracle_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_enumeration");
    group.sample_size(10);
    for items in [14usize, 18] {
        let problem = seeded_knapsack(11, items, 3);
        for (label, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(label, items), &problem, |b, p| {
                b.iter(|| enumerate_frontier_with(black_box(p), mode).unwrap())
            });
        }
    }
    group.finish();
}

fn batch_solve(c: &mut Criterion) {
    let driver = MetaSolver::with_builtin();
    let config = AlgorithmConfig::default();
    let mut group = c.benchmark_group("batch_solve");
    group.sample_size(10);
    for (algorithm, objectives) in [("epsilon-constraint", 2usize), ("kirlik-sayin", 3)] {
        let problems: Vec<_> = (0..32)
            .map(|s| seeded_knapsack(s, 12, objectives))
            .collect();
        for (label, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(label, algorithm), &problems, |b, ps| {
                b.iter(|| solve_many(&driver, black_box(ps), algorithm, &config, mode))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, oracle_enumeration, batch_solve);
criterion_main!(benches);
