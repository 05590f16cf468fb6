use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use dofr_bench::{config_423, csit, grid};
use dofr_core::analysis::{audit_converse, audit_corners, sweep_row};
use dofr_core::regions::region_imperfect;

fn bench_vertex_enumeration(c: &mut Criterion) {
    let cfg = config_423();
    let q = csit((4, 5), (2, 5));
    let region = region_imperfect(&cfg, &q);
    c.bench_function("enumerate_vertices (4,2,3)", |b| {
        b.iter(|| black_box(&region).enumerate_vertices().unwrap())
    });
}

fn bench_corner_audit(c: &mut Criterion) {
    let cfg = config_423();
    let q = csit((3, 5), (2, 5));
    c.bench_function("audit_corners (4,2,3) case 4", |b| {
        b.iter(|| audit_corners(black_box(&cfg), black_box(&q)))
    });
}

fn bench_converse_audit(c: &mut Criterion) {
    let cfg = config_423();
    let q = csit((3, 5), (2, 5));
    c.bench_function("audit_converse (4,2,3)", |b| {
        b.iter(|| audit_converse(black_box(&cfg), black_box(&q)))
    });
}

fn bench_sweep_row(c: &mut Criterion) {
    let cfg = config_423();
    let qs = grid(4);
    c.bench_function("sweep_row (4,2,3), 25 qualities", |b| {
        b.iter(|| {
            for q in &qs {
                black_box(sweep_row(black_box(&cfg), q));
            }
        })
    });
}

criterion_group!(
    benches,
    bench_vertex_enumeration,
    bench_corner_audit,
    bench_converse_audit,
    bench_sweep_row
);
criterion_main!(benches);
