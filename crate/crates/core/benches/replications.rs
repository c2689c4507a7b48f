use criterion::{criterion_group, criterion_main, Criterion};

use affinet::experiments::{cell_seeds, run_replications};
use affinet::{Executor, Params, Simulation};

fn replications(c: &mut Criterion) {
    let params = Params { steps: 200, ..Params::default() };
    let seeds = cell_seeds(1, 0, 8);
    let mut group = c.benchmark_group("replications_8x200");
    group.sample_size(10);
    for exec in [Executor::Sequential, Executor::Parallel] {
        group.bench_function(format!("{exec:?}"), |b| {
            b.iter(|| run_replications(&params, &seeds, exec).unwrap())
        });
    }
    group.finish();
}

fn single_step(c: &mut Criterion) {
    let params = Params::default();
    let mut sim = Simulation::new(&params).unwrap();
    for _ in 0..200 {
        sim.step();
    }
    c.bench_function("step_default", |b| {
        b.iter_batched(|| sim.clone(), |mut s| s.step(), criterion::BatchSize::SmallInput)
    });
    c.bench_function("observe_default", |b| b.iter(|| sim.observe()));
}

criterion_group!(benches, replications, single_step);
criterion_main!(benches);
