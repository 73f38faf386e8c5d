use criterion::{black_box, criterion_group, criterion_main, Criterion};

use nzflow_bench::{corpus, named};
use nzflow_core::cdc::{find_ocdc, DEFAULT_BUDGET};
use nzflow_core::constructions::{petersen_flow, seymour_flow};
use nzflow_core::graph::petersen;
use nzflow_core::optimizer::{minimize, OptimizeConfig};
use nzflow_core::triangulation::triangulate;

fn cdc_search(c: &mut Criterion) {
    let k4 = named("K4");
    let p = petersen();
    c.bench_function("find_ocdc K4 k=3 exhaustive", |b| {
        b.iter(|| find_ocdc(black_box(&k4), 3, DEFAULT_BUDGET).unwrap())
    });
    c.bench_function("find_ocdc Petersen k=5", |b| {
        b.iter(|| find_ocdc(black_box(&p), 5, DEFAULT_BUDGET).unwrap())
    });
}

fn integer_pair(c: &mut Criterion) {
    let mut group = c.benchmark_group("seymour_flow");
    for (name, g) in corpus() {
        group.bench_function(name, |b| b.iter(|| seymour_flow(black_box(&g)).unwrap()));
    }
    group.finish();
}

fn optimise(c: &mut Criterion) {
    let k4 = named("K4");
    let config = OptimizeConfig {
        starts: 8,
        refine_starts: 2,
        refine_trials: 4,
        ..OptimizeConfig::default()
    };
    let mut group = c.benchmark_group("minimize");
    group.sample_size(10);
    group.bench_function("K4 8 starts", |b| {
        b.iter(|| minimize(black_box(&k4), &config).unwrap())
    });
    group.finish();
}

fn triangulation(c: &mut Criterion) {
    let g = petersen();
    let f = petersen_flow().unwrap();
    c.bench_function("triangulate Petersen", |b| {
        b.iter(|| triangulate(black_box(&g), black_box(&f)).unwrap())
    });
}

criterion_group!(benches, cdc_search, integer_pair, optimise, triangulation);
criterion_main!(benches);
