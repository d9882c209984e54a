use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use avpoly::distribution::{dist_bruteforce_with, dist_closed_with, dist_recurrence_with};
use avpoly::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn bruteforce(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumeration");
    g.sample_size(10).measurement_time(Duration::from_secs(10));
    for n in [9, 11] {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| dist_bruteforce_with(n, n, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn closed(c: &mut Criterion) {
    let mut g = c.benchmark_group("closed");
    g.sample_size(10);
    for n in [16, 24] {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| dist_closed_with(n, exec))
            });
        }
    }
    g.finish();
}

fn recurrence(c: &mut Criterion) {
    let mut g = c.benchmark_group("recurrence");
    g.sample_size(10);
    for n in [60, 120] {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| dist_recurrence_with(n, exec))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, bruteforce, closed, recurrence);
criterion_main!(benches);
