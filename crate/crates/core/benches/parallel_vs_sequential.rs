//! Data-parallel against sequential execution of the heavy paths.
//!
//! The `parallel` feature decides which code is compiled, so the group name
//! records the build. Compare the two builds with
//!
//! ```text
//! cargo bench -p torus-asep --bench parallel_vs_sequential -- --save-baseline par
//! cargo bench -p torus-asep --bench parallel_vs_sequential --no-default-features -- --baseline par
//! ```
//!
//! With the feature on, each workload is also timed inside a one-thread pool.

use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use torus_asep::dynamics::{build_numeric, build_symbolic, GeneratorMode};
use torus_asep::mcmc::{simulate_replicas, Horizon, SimConfig};
use torus_asep::observables::observables;
use torus_asep::stationary::exact_stationary;
use torus_asep::{parallel_enabled, RatePoint};

fn rates(n: usize) -> RatePoint {
    let p: Vec<String> = (1..=n).map(|k| format!("{}", k + 1)).collect();
    let q: Vec<String> = (1..=n).map(|k| format!("1/{}", k + 1)).collect();
    RatePoint::parse(&format!("{};{}", p.join(","), q.join(","))).expect("valid rates")
}

type Workload = Box<dyn Fn() + Sync>;

fn workloads() -> Vec<(&'static str, Workload)> {
    vec![
        ("symbolic_generator_7_3", Box::new(|| drop(black_box(build_symbolic(7, 3, u64::MAX).unwrap())))),
        (
            "exact_stationary_6_3",
            Box::new(|| {
                let r = rates(3);
                let g = build_numeric(6, 3, &r, u64::MAX).unwrap();
                black_box(exact_stationary(&g, &r).unwrap());
            }),
        ),
        (
            "observables_symbolic_5_3",
            Box::new(|| drop(black_box(observables(5, 3, &GeneratorMode::Symbolic, u64::MAX).unwrap()))),
        ),
        (
            "replicas_4x100k_6_3",
            Box::new(|| {
                let cfg = SimConfig::new(6, 3, rates(3), Horizon::Events(100_000), 1);
                black_box(simulate_replicas(&cfg, 4).unwrap());
            }),
        ),
    ]
}

fn bench(c: &mut Criterion) {
    let build = if parallel_enabled() { "parallel_build" } else { "sequential_build" };
    let mut group = c.benchmark_group(build);
    group.sample_size(10).measurement_time(Duration::from_secs(5));
    for (name, work) in workloads() {
        group.bench_function(BenchmarkId::new(name, "default_pool"), |b| b.iter(&work));
        #[cfg(feature = "parallel")]
        {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("thread pool");
            group.bench_function(BenchmarkId::new(name, "one_thread"), |b| b.iter(|| pool.install(&work)));
        }
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
