use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ratcurves::agraph::{canonical_form, tau};
use ratcurves::contraction::{enumerate_nice_contractions, equivalence_classes};
use ratcurves::strata::enumerate_strata;
use ratcurves_bench::graphs;

fn canonical(c: &mut Criterion) {
    let gs = graphs();
    c.bench_function("canonical_form/fixtures", |b| {
        b.iter(|| gs.iter().map(|g| canonical_form(black_box(g))).collect::<Vec<_>>())
    });
}

fn strata(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_strata");
    for (r, e) in [(0, 4), (1, 4), (2, 3)] {
        group.bench_function(format!("r{r}_e{e}"), |b| b.iter(|| enumerate_strata(black_box(r), black_box(e)).unwrap()));
    }
    group.finish();
}

fn classes(c: &mut Criterion) {
    let mut group = c.benchmark_group("equivalence_classes");
    group.sample_size(20);
    for e in [4, 5, 6] {
        let set = enumerate_nice_contractions(&tau(0, e).unwrap(), 2).unwrap();
        group.bench_function(format!("s2_tau0_{e}"), |b| b.iter(|| equivalence_classes(black_box(&set))));
    }
    group.finish();
}

criterion_group!(benches, canonical, strata, classes);
criterion_main!(benches);
