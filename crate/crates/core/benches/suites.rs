use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rforest::fixtures::{interval10, tail, x3};
use rforest::harness::par::Execution;
use rforest::harness::suite::{run_suite_with, SuiteConfig};

fn schedules(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite-schedule");
    group.sample_size(10);
    let cases = [
        ("metric-axioms", x3(), 500),
        ("parallel-paths", interval10(), 200),
        ("parallel-paths", tail(), 200),
        ("type-metric", x3(), 200),
    ];
    for (suite, space, n) in &cases {
        let cfg = SuiteConfig::new(suite, 1, *n);
        let id = format!("{suite}/{:?}", space.kind());
        for (name, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            group.bench_with_input(BenchmarkId::new(name, &id), &cfg, |b, cfg| {
                b.iter(|| run_suite_with(space, cfg, exec).expect("known suite"))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, schedules);
criterion_main!(benches);
