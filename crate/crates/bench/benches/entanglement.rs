use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use multidir_core::constructions::{
    determinant_for, graph_state, identity_state, symmetric_incidence,
};
use multidir_core::state::{is_multidirectional_unitary, is_spatially_symmetric};
use multidir_core::{Geometry, GeometryKind, DEFAULT_TOL};

fn multidirectional(c: &mut Criterion) {
    let mut group = c.benchmark_group("multidirectional");
    group.sample_size(10);
    for (kind, n) in [
        (GeometryKind::Square, 5),
        (GeometryKind::Hexagon, 3),
        (GeometryKind::Octahedron, 3),
        (GeometryKind::Cube, 3),
    ] {
        let g = Geometry::new(kind).unwrap();
        let st = identity_state(&g, n).unwrap();
        group.bench_function(format!("{kind}/N={n}"), |b| {
            b.iter(|| is_multidirectional_unitary(black_box(&st), &g, DEFAULT_TOL).unwrap())
        });
    }
    group.finish();
}

fn symmetry(c: &mut Criterion) {
    let g = Geometry::new(GeometryKind::Cube).unwrap();
    let st = identity_state(&g, 3).unwrap();
    c.bench_function("spatial symmetry/cube N=3", |b| {
        b.iter(|| is_spatially_symmetric(black_box(&st), &g, DEFAULT_TOL))
    });
}

fn graphs(c: &mut Criterion) {
    let g = Geometry::new(GeometryKind::Cube).unwrap();
    let graph = symmetric_incidence(&g, &[1, 2, 3]).unwrap();
    let mut group = c.benchmark_group("graph");
    group.sample_size(10);
    group.bench_function("state/cube N=5", |b| {
        b.iter(|| graph_state(black_box(&graph), 5).unwrap())
    });
    let st = graph_state(&graph, 5).unwrap();
    group.bench_function("direct check/cube N=5", |b| {
        b.iter(|| is_multidirectional_unitary(black_box(&st), &g, DEFAULT_TOL).unwrap())
    });
    group.bench_function("determinant/cube N=5", |b| {
        b.iter(|| {
            g.bipartitions()
                .iter()
                .map(|s| determinant_for(black_box(&graph), s, 5).unwrap().maximal)
                .collect::<Vec<_>>()
        })
    });
    group.finish();
}

criterion_group!(benches, multidirectional, symmetry, graphs);
criterion_main!(benches);
