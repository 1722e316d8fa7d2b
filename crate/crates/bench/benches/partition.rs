use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lozsym_core::algebra::modp;
use lozsym_core::field::{self, Assignment};
use lozsym_core::lattice::{general_config, hexagon_config};
use lozsym_core::partition::{F_enum, F_horizontal_closed, F_lgv, F_single_dp, F_single_modular, LgvMode, SymbolTable};
use lozsym_core::regions::{region_to_config, RegionSpec};
use lozsym_core::symmetry::{check_symmetric_random, SymFamily, DEFAULT_SEED, DEFAULT_TRIALS};

fn symbolic(c: &mut Criterion) {
    let hex = hexagon_config(2, 2, 2).unwrap();
    let mut g = c.benchmark_group("symbolic");
    g.sample_size(10);
    g.bench_function("enum hexagon(2,2,2)", |b| b.iter(|| F_enum(black_box(&hex))));
    g.bench_function("lgv hexagon(2,2,2)", |b| b.iter(|| F_lgv(black_box(&hex), LgvMode::Identity).unwrap()));
    let cut = region_to_config(&RegionSpec::Trapezoid(vec![1, 2])).unwrap();
    g.bench_function("enum trapezoid(1,2)", |b| b.iter(|| F_enum(black_box(&cut))));
    g.bench_function("closed trapezoid(1,2)", |b| b.iter(|| F_horizontal_closed(black_box(&cut)).unwrap()));
    for (rows, cols) in [(2, 4), (3, 3), (3, 4)] {
        let t = SymbolTable::new(rows, cols);
        let id = format!("{rows}x{cols}");
        g.bench_with_input(BenchmarkId::new("single dp", &id), &t, |b, t| b.iter(|| F_single_dp(1, cols, t).unwrap()));
        g.bench_with_input(BenchmarkId::new("single modular", &id), &t, |b, t| {
            b.iter(|| F_single_modular(1, cols, t).unwrap())
        });
    }
    g.finish();
}

fn over_the_field(c: &mut Criterion) {
    let p = modp::DEFAULT_PRIME;
    let a = Assignment { p, x: (1..=12).map(|i| 7919 * i).collect(), y: (1..=12).map(|j| 104729 * j + 3).collect() };
    let mut g = c.benchmark_group("field");
    g.bench_function("single dp 12x12", |b| b.iter(|| field::single_dp(black_box(&a), 12, 1, 12).unwrap()));
    g.bench_function("single modular 12x12", |b| b.iter(|| field::single_modular(black_box(&a), 12, 1, 12).unwrap()));
    let hex = hexagon_config(4, 4, 4).unwrap();
    g.bench_function("lgv hexagon(4,4,4)", |b| b.iter(|| field::lgv(black_box(&hex), &a).unwrap()));
    let fig = general_config(&[2, 0, 0, 3, 0, 0, 1, 0, 0, 1, 0, 0], &[0, 1, 0, 0, 1, 0, 1, 1, 0, 0, 0, 3], 5).unwrap();
    g.sample_size(10);
    g.bench_function("randomized x-check 5x12", |b| {
        b.iter(|| {
            check_symmetric_random(&fig, SymFamily::X, SymFamily::X.full_range(&fig), DEFAULT_TRIALS, p, DEFAULT_SEED)
                .unwrap()
        })
    });
    g.finish();
}

criterion_group!(benches, symbolic, over_the_field);
criterion_main!(benches);
