//! Sequential-versus-parallel throughput on the data-parallel hot paths:
//! a slice of the exact identity registry, the numeric orthogonality matrix,
//! and a forward-transform sample sweep.
//!
//! Run with the default features for both arms; without the `parallel`
//! feature only the sequential arm is compiled.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qcalc_core::fourier::{forward_check, PairClass, TransformConfig};
use qcalc_core::hermite::{orthogonality_numeric, HermiteFamily};
use qcalc_core::identities::{check_all, CheckParams};
use qcalc_core::jackson::JacksonConfig;
use qcalc_core::parallel::{map_with, ExecMode};
use num_complex::Complex64;

fn modes() -> Vec<(&'static str, ExecMode)> {
    #[allow(unused_mut)]
    let mut v = vec![("sequential", ExecMode::Sequential)];
    #[cfg(feature = "parallel")]
    v.push(("parallel", ExecMode::Parallel));
    v
}

fn bench_registry_slice(c: &mut Criterion) {
    let ids: Vec<String> = ["eq12", "eq15", "eq18", "eq19", "eq38", "eq39", "eq68", "eq31"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut group = c.benchmark_group("registry_exact_slice");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            let params = CheckParams {
                trunc: 10,
                exec,
                ..CheckParams::default()
            };
            b.iter(|| {
                let reports = check_all(&params, Some(&ids)).unwrap();
                assert!(reports.iter().all(|r| r.status == "pass"));
            });
        });
    }
    group.finish();
}

fn bench_orthogonality_matrix(c: &mut Criterion) {
    let q = 0.5;
    let cfg = JacksonConfig::default();
    let pairs: Vec<(u32, u32)> = (0..=6u32)
        .flat_map(|m| (0..=6u32).map(move |n| (m, n)))
        .collect();
    let mut group = c.benchmark_group("orthogonality_matrix_7x7");
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                let results = map_with(exec, &pairs, |&(m, n)| {
                    orthogonality_numeric(HermiteFamily::II, m, n, q, 1.0, &cfg).unwrap()
                });
                assert_eq!(results.len(), pairs.len());
            });
        });
    }
    group.finish();
}

fn bench_transform_sweep(c: &mut Criterion) {
    let tc = TransformConfig::new(0.5, 1.0).unwrap();
    let ys: Vec<Complex64> = (0..40)
        .map(|j| Complex64::new(-2.0 + 0.1 * j as f64, 0.0))
        .collect();
    let mut group = c.benchmark_group("forward_transform_40pts");
    group.sample_size(20);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                let r = forward_check(PairClass::HermiteWeight, 4, &ys, &tc, exec).unwrap();
                assert!(r.max_deviation < 1e-9);
            });
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_registry_slice,
    bench_orthogonality_matrix,
    bench_transform_sweep
);
criterion_main!(benches);
