use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qlambert::registry::{check_all, CheckConfig};
use qlambert::special::{theta, ThetaKind};
use qlambert::{Execution, Kind};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn exact_catalog(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_catalog");
    group.sample_size(10).measurement_time(Duration::from_secs(20));
    for terms in [32, 96] {
        for (name, execution) in MODES {
            let config = CheckConfig { terms, execution, ..CheckConfig::default() };
            group.bench_with_input(BenchmarkId::new(name, terms), &config, |b, config| {
                b.iter(|| black_box(check_all(Some(Kind::Exact), config)))
            });
        }
    }
    group.finish();
}

fn numeric_catalog(c: &mut Criterion) {
    let mut group = c.benchmark_group("numeric_catalog");
    group.sample_size(10).measurement_time(Duration::from_secs(20));
    for (name, execution) in MODES {
        let config = CheckConfig { precision: 64, execution, ..CheckConfig::default() };
        group.bench_with_input(BenchmarkId::new(name, 64), &config, |b, config| {
            b.iter(|| black_box(check_all(Some(Kind::Numeric), config)))
        });
    }
    group.finish();
}

// The product kernel switches to rayon above a size threshold; build with
// `--no-default-features` to measure the sequential kernel on the same inputs.
fn series_product(c: &mut Criterion) {
    let mut group = c.benchmark_group("series_product");
    group.sample_size(10);
    for order in [256, 1024] {
        let psi = theta(ThetaKind::Psi, 1, order).unwrap();
        let phi = theta(ThetaKind::Phi, 1, order).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(order), &(psi, phi), |b, (x, y)| {
            b.iter(|| black_box(x.mul(y)))
        });
    }
    group.finish();
}

criterion_group!(benches, exact_catalog, numeric_catalog, series_product);
criterion_main!(benches);
