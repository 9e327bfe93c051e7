use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;

use cmxhp::cmpair::{build_cm_pair, x_tilde};
use cmxhp::partition::Partition;
use cmxhp::spectral::orthogonality_check;
use cmxhp::verify::{annihilation_sweep, dual_method_sweep, generating_sweep};

fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let all = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut sizes = vec![1];
    if all > 1 {
        sizes.push(all);
    }
    sizes
        .into_iter()
        .map(|n| {
            let pool = ThreadPoolBuilder::new().num_threads(n).build().unwrap();
            (format!("{n} threads"), pool)
        })
        .collect()
}

fn bench(c: &mut Criterion) {
    let pools = pools();
    let tall: Partition = "4,3,2,1".parse().unwrap();
    let xt = x_tilde(&build_cm_pair(&tall).unwrap());
    let even: Partition = "2,2,1,1".parse().unwrap();

    let mut g = c.benchmark_group("parallel");
    g.sample_size(10);
    for (label, pool) in &pools {
        g.bench_with_input(
            BenchmarkId::new("dual_method_sweep", label),
            pool,
            |b, pool| b.iter(|| pool.install(|| black_box(dual_method_sweep(6, 8)))),
        );
        g.bench_with_input(
            BenchmarkId::new("generating_sweep", label),
            pool,
            |b, pool| b.iter(|| pool.install(|| black_box(generating_sweep(5, 8)))),
        );
        g.bench_with_input(
            BenchmarkId::new("annihilation_sweep", label),
            pool,
            |b, pool| {
                b.iter(|| pool.install(|| black_box(annihilation_sweep(5, &[-0.5], 10, 1e-10))))
            },
        );
        g.bench_with_input(
            BenchmarkId::new("adjugate_10x10", label),
            pool,
            |b, pool| b.iter(|| pool.install(|| black_box(xt.adjugate().unwrap()))),
        );
        g.bench_with_input(BenchmarkId::new("gram_2211", label), pool, |b, pool| {
            b.iter(|| pool.install(|| black_box(orthogonality_check(&even, -0.25, 14).unwrap())))
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
