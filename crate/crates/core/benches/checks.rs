use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tilted_bruhat::exec::Parallelism;
use tilted_bruhat::operators::{mixed_family, r_family};
use tilted_bruhat::random;
use tilted_bruhat::tilted::TiltedDigraph;
use tilted_bruhat::ybe::{check_ybe, YbeOptions};
use tilted_bruhat::{RootSystem, TypeLabel, WeylGroup};

const MODES: [(&str, Parallelism); 2] = [
    ("sequential", Parallelism::Sequential),
    ("rayon", Parallelism::Rayon),
];

fn group(t: TypeLabel, n: usize) -> Arc<WeylGroup> {
    Arc::new(WeylGroup::new(Arc::new(RootSystem::new(t, n).unwrap())).unwrap())
}

fn ybe(c: &mut Criterion) {
    let mut grp = c.benchmark_group("numeric_ybe");
    grp.sample_size(10);
    for (t, n) in [(TypeLabel::B, 3), (TypeLabel::D, 4)] {
        let g = group(t, n);
        let params = random::mixed_params(g.root_system(), &mut random::rng(0));
        let family = r_family(&mixed_family(&g, &params));
        for (name, par) in MODES {
            let opts = YbeOptions {
                parallelism: par,
                ..Default::default()
            };
            grp.bench_with_input(BenchmarkId::new(name, g.name()), &family, |b, f| {
                b.iter(|| assert!(black_box(check_ybe(f, &opts)).passed()))
            });
        }
    }
    grp.finish();
}

fn tilted(c: &mut Criterion) {
    let mut grp = c.benchmark_group("tilted_b3");
    grp.sample_size(10);
    let g = group(TypeLabel::B, 3);
    for (name, par) in MODES {
        grp.bench_function(BenchmarkId::new("build", name), |b| {
            b.iter(|| {
                TiltedDigraph::with_parallelism(&g, g.default_reflection_ordering(), par).unwrap()
            })
        });
        let d = TiltedDigraph::with_parallelism(&g, g.default_reflection_ordering(), par).unwrap();
        grp.bench_function(BenchmarkId::new("monotone_paths", name), |b| {
            b.iter(|| assert!(black_box(d.check_monotone_paths(par)).passed()))
        });
        grp.bench_function(BenchmarkId::new("product_identity", name), |b| {
            b.iter(|| assert!(black_box(d.check_product_identity(par)).is_empty()))
        });
    }
    grp.finish();
}

criterion_group!(benches, ybe, tilted);
criterion_main!(benches);
