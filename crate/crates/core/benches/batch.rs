use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use colorful::generate::{random_graph, rng};
use colorful::oracle::{brute_sc, brute_sc_sequential, OracleBudget};
use colorful::{msv_batch, msv_batch_sequential};

fn batch_msv(c: &mut Criterion) {
    let mut group = c.benchmark_group("msv_batch");
    for &count in &[16usize, 64] {
        let mut r = rng(count as u64);
        let graphs: Vec<_> = (0..count)
            .map(|_| random_graph(&mut r, 2_000, 6_000, 20))
            .collect();
        group.bench_with_input(BenchmarkId::new("sequential", count), &graphs, |b, gs| {
            b.iter(|| msv_batch_sequential(black_box(gs)))
        });
        group.bench_with_input(BenchmarkId::new("parallel", count), &graphs, |b, gs| {
            b.iter(|| msv_batch(black_box(gs)))
        });
    }
    group.finish();
}

fn subset_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_sc");
    group.sample_size(20);
    // two colors, so each class holds about half of the vertices
    let g = random_graph(&mut rng(3), 40, 120, 2);
    let class = (0..2).max_by_key(|&c| g.color_class(c).len()).unwrap();
    let budget = OracleBudget::subsets().with_max_vertices(24);
    let budget = OracleBudget {
        max_blocks_explored: 1 << 24,
        ..budget
    };
    let k = g.color_class(class).len();
    group.bench_function(BenchmarkId::new("sequential", k), |b| {
        b.iter(|| brute_sc_sequential(black_box(&g), class, &budget).unwrap())
    });
    group.bench_function(BenchmarkId::new("parallel", k), |b| {
        b.iter(|| brute_sc(black_box(&g), class, &budget).unwrap())
    });
    group.finish();
}

criterion_group!(benches, batch_msv, subset_scan);
criterion_main!(benches);
