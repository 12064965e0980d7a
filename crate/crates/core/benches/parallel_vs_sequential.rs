use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use floquet_exciton::cavity::u12_sweep;
use floquet_exciton::lattice::{occupations, BzGrid, ModelParams};
use floquet_exciton::reduce::{tree_sum_par, tree_sum_seq};
use floquet_exciton::screening::{solve_exciton_resonance, ScreenedDetunings};

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

fn thread_counts() -> Vec<usize> {
    let max = rayon::current_num_threads();
    let mut v = vec![1];
    if max > 1 {
        v.push(max);
    }
    v
}

fn reductions(c: &mut Criterion) {
    let mut group = c.benchmark_group("tree_sum");
    for n in [1 << 16, 1 << 20] {
        let data: Vec<f64> = (0..n).map(|i| 1.0 / (1.0 + i as f64)).collect();
        group.bench_with_input(BenchmarkId::new("sequential", n), &data, |b, d| {
            b.iter(|| tree_sum_seq(d.len(), |i| black_box(d[i])))
        });
        group.bench_with_input(BenchmarkId::new("parallel", n), &data, |b, d| {
            b.iter(|| tree_sum_par(d.len(), |i| black_box(d[i])))
        });
    }
    group.finish();
}

fn detunings(c: &mut Criterion) {
    let p = ModelParams::default();
    let mut group = c.benchmark_group("screened_detunings");
    group.sample_size(20);
    for l in [256, 1024] {
        let grid = BzGrid::new(l, &p).unwrap();
        let occ = occupations(&p, &grid).unwrap();
        for threads in thread_counts() {
            let pool = pool(threads);
            group.bench_function(BenchmarkId::new(format!("threads={threads}"), l), |b| {
                b.iter(|| pool.install(|| ScreenedDetunings::compute(&p, &grid, &occ).unwrap()))
            });
        }
    }
    group.finish();
}

fn resonance(c: &mut Criterion) {
    let p = ModelParams::default();
    let grid = BzGrid::new(1024, &p).unwrap();
    let occ = occupations(&p, &grid).unwrap();
    let mut group = c.benchmark_group("exciton_resonance_l1024");
    group.sample_size(10);
    for threads in thread_counts() {
        let pool = pool(threads);
        group.bench_function(format!("threads={threads}"), |b| {
            b.iter(|| pool.install(|| solve_exciton_resonance(&p, &grid, &occ).unwrap()))
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let p = ModelParams::default();
    let grid = BzGrid::new(128, &p).unwrap();
    let u12: Vec<f64> = (0..23).map(|i| 0.1 + 0.05 * i as f64).collect();
    let mut group = c.benchmark_group("u12_sweep_l128");
    group.sample_size(10);
    for threads in thread_counts() {
        let pool = pool(threads);
        group.bench_function(format!("threads={threads}"), |b| {
            b.iter(|| pool.install(|| u12_sweep(&p, &grid, 0.05, &u12).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, reductions, detunings, resonance, sweep);
criterion_main!(benches);
