use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polycolor::coloring::{build_conflict_graph_with, verify_coloring_with};
use polycolor::distance::ConflictMode;
use polycolor::exec::Exec;
use polycolor::generators::{gen_builtin, FixtureName};

fn strategies(c: &mut Criterion) {
    let mut group = c.benchmark_group("conflict_graph");
    group.sample_size(10);
    for f in [FixtureName::Hex7, FixtureName::Tri8, FixtureName::Grid9] {
        let t = gen_builtin(f);
        for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
            group.bench_with_input(BenchmarkId::new(name, f), &t, |b, t| {
                b.iter(|| black_box(build_conflict_graph_with(t, exec, 0)))
            });
        }
    }
    group.finish();
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for f in [FixtureName::Hex7, FixtureName::Square7] {
        let t = gen_builtin(f);
        for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
            group.bench_with_input(BenchmarkId::new(name, f), &t, |b, t| {
                b.iter(|| black_box(verify_coloring_with(t, ConflictMode::OwnedCells, exec)))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, strategies);
criterion_main!(benches);
