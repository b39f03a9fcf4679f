use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qspec::enumerate::{all_connected, sample_connected};
use qspec::graph::{clique_join_independent, extremal_h};
use qspec::graph6::{decode_graph6, encode_graph6};
use qspec::matching::tutte_berge_oracle;
use qspec::maximum_matching;
use qspec::verify::check_graph;

fn blossom(c: &mut Criterion) {
    let mut group = c.benchmark_group("matching/gnp_0.1");
    for n in [50, 100, 200] {
        let g = sample_connected(n, 0.1, 1, 3).unwrap().remove(0);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| maximum_matching(black_box(g)))
        });
    }
    group.finish();
    let h = extremal_h(200).unwrap();
    c.bench_function("matching/extremal_h_200", |b| {
        b.iter(|| maximum_matching(black_box(&h)))
    });
}

fn oracle(c: &mut Criterion) {
    let g = clique_join_independent(5, 9);
    c.bench_function("tutte_berge_oracle/k5_e9", |b| {
        b.iter(|| tutte_berge_oracle(black_box(&g)).unwrap())
    });
}

fn harness(c: &mut Criterion) {
    let graphs: Vec<_> = all_connected(6).unwrap().collect();
    c.bench_function("check_graph/exhaustive_6", |b| {
        b.iter(|| {
            graphs
                .iter()
                .map(|g| check_graph(black_box(g)).unwrap().edges)
                .sum::<usize>()
        })
    });
    let g = sample_connected(60, 0.3, 1, 4).unwrap().remove(0);
    let s = encode_graph6(&g).unwrap();
    c.bench_function("graph6/encode_60", |b| {
        b.iter(|| encode_graph6(black_box(&g)).unwrap())
    });
    c.bench_function("graph6/decode_60", |b| {
        b.iter(|| decode_graph6(black_box(&s)).unwrap())
    });
}

criterion_group!(benches, blossom, oracle, harness);
criterion_main!(benches);
