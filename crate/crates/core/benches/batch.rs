use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use synchro_core::automaton::DEFAULT_EXACT_LIMIT;
use synchro_core::batch::Mode;
use synchro_core::suites::{exhaustive_bound, image_suite, equation_suite};

const MODES: [(&str, Mode); 2] = [("parallel", Mode::Auto), ("sequential", Mode::Sequential)];

fn exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive_bound");
    group.sample_size(10);
    for (name, mode) in MODES {
        for n in [3usize, 4] {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| exhaustive_bound(n, 2, 1 << 20, DEFAULT_EXACT_LIMIT, mode).unwrap())
            });
        }
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::new("image", name), |b| {
            b.iter(|| image_suite(2_000, 1, mode))
        });
        group.bench_function(BenchmarkId::new("equation", name), |b| {
            b.iter(|| equation_suite(200, 1, mode))
        });
    }
    group.finish();
}

criterion_group!(benches, exhaustive, suites);
criterion_main!(benches);
