//! Route benches on the golden inputs: the three torus-side paths on the
//! non-simple surface bridge, the conjugation-side computation, and the
//! cyclotomic pipeline.

use brauer_kit::cmfields::{
    bilinear_form_lattice, brauer_cm, build_nonsimple_cm_surface, build_quartic_cm,
    cyclotomic_algebra, cyclotomic_brauer, trace_dual,
};
use brauer_kit::torus::{brauer_mod4_oracle, brauer_via_h1, invariant_brauer};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_torus_routes(c: &mut Criterion) {
    let l = build_nonsimple_cm_surface(-3, -7).expect("golden discriminants are valid");
    let f = bilinear_form_lattice(&l);
    let mut group = c.benchmark_group("surface_bridge");
    group.bench_function("quotient", |b| b.iter(|| invariant_brauer(&f)));
    group.bench_function("cohomology", |b| b.iter(|| brauer_via_h1(&f)));
    group.bench_function("enumeration", |b| {
        b.iter(|| brauer_mod4_oracle(&f).expect("rank 4 is enumerable"))
    });
    group.finish();
}

fn bench_cm_side(c: &mut Criterion) {
    let surface = build_nonsimple_cm_surface(-3, -7).expect("golden discriminants are valid");
    let quartic = build_quartic_cm();
    let mut group = c.benchmark_group("cm_side");
    group.bench_function("surface", |b| b.iter(|| brauer_cm(&surface)));
    group.bench_function("quartic", |b| b.iter(|| brauer_cm(&quartic)));
    group.bench_function("surface_trace_dual", |b| b.iter(|| trace_dual(&surface)));
    group.finish();
}

fn bench_cyclotomic(c: &mut Criterion) {
    let mut group = c.benchmark_group("cyclotomic");
    for n in [7usize, 12, 16] {
        group.bench_with_input(BenchmarkId::new("ring", n), &n, |b, &n| {
            b.iter(|| cyclotomic_algebra(n))
        });
        group.bench_with_input(BenchmarkId::new("brauer", n), &n, |b, &n| {
            b.iter(|| cyclotomic_brauer(n))
        });
    }
    group.finish();
}

criterion_group!(routes, bench_torus_routes, bench_cm_side, bench_cyclotomic);
criterion_main!(routes);
