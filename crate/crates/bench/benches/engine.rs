use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use edgereg::canon::enumerate_graphs;
use edgereg::even::EdgeMultiset;
use edgereg::{colon_graph, edge_ideal, graded_betti, hochster_oracle, EngineConfig};
use edgereg_bench::fixtures;

fn betti(c: &mut Criterion) {
    let cfg = EngineConfig::default();
    let mut group = c.benchmark_group("graded_betti");
    group.sample_size(10);
    for (name, g) in fixtures() {
        for s in [1, 2] {
            let ideal = edge_ideal(&g).power(s).unwrap();
            group.bench_with_input(BenchmarkId::new(name, s), &ideal, |b, i| {
                b.iter(|| graded_betti(black_box(i), &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let cfg = EngineConfig::default();
    let mut group = c.benchmark_group("hochster_oracle");
    group.sample_size(10);
    for (name, g) in fixtures().into_iter().take(2) {
        let ideal = edge_ideal(&g).power(2).unwrap();
        group.bench_with_input(BenchmarkId::new(name, 2), &ideal, |b, i| {
            b.iter(|| hochster_oracle(black_box(i), &cfg).unwrap())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_graphs");
    for n in [5, 6, 7] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| enumerate_graphs(black_box(n), false).unwrap())
        });
    }
    group.finish();
}

fn colon(c: &mut Criterion) {
    let mut group = c.benchmark_group("colon_graph");
    for (name, g) in fixtures() {
        let e = g.edges()[0];
        let m = EdgeMultiset::new(&g, &[e, e]).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &m, |b, m| {
            b.iter(|| colon_graph(black_box(&g), m))
        });
    }
    group.finish();
}

criterion_group!(benches, betti, oracle, enumeration, colon);
criterion_main!(benches);
