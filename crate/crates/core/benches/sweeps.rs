use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lorenzkit::exec::{par_map, seq_map};
use lorenzkit::maps::{derive_increasing_lorenz, tent_symmetric};
use lorenzkit::periodic::enumerate_periods;
use lorenzkit::rotation::{rotation_number_counting, stunted_tent};
use lorenzkit::ExactScalar;

fn slopes(k: i64) -> Vec<ExactScalar> {
    (0..k)
        .map(|j| ExactScalar::ratio(111 + 6 * j, 100))
        .collect()
}

fn periods(l: &ExactScalar) -> usize {
    let phi = derive_increasing_lorenz(&tent_symmetric(l.clone()).unwrap()).unwrap();
    enumerate_periods(&phi, 8).unwrap().period_set().len()
}

fn counting(l: &ExactScalar) -> ExactScalar {
    rotation_number_counting(&stunted_tent(l).unwrap(), &ExactScalar::ratio(1, 7), 5000)
        .unwrap()
        .estimate
}

fn bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("period-sweep");
    g.sample_size(10);
    let ls = slopes(15);
    g.bench_with_input(BenchmarkId::new("sequential", ls.len()), &ls, |b, ls| {
        b.iter(|| seq_map(ls, periods))
    });
    g.bench_with_input(BenchmarkId::new("parallel", ls.len()), &ls, |b, ls| {
        b.iter(|| par_map(ls, periods))
    });
    g.finish();

    let mut g = c.benchmark_group("counting-sweep");
    g.sample_size(10);
    let ls: Vec<ExactScalar> = (0..12)
        .map(|j| ExactScalar::ratio(1430 + 47 * j, 1000))
        .collect();
    g.bench_with_input(BenchmarkId::new("sequential", ls.len()), &ls, |b, ls| {
        b.iter(|| seq_map(ls, counting))
    });
    g.bench_with_input(BenchmarkId::new("parallel", ls.len()), &ls, |b, ls| {
        b.iter(|| par_map(ls, counting))
    });
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
