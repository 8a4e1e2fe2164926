use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use coinweigh::counting::{balance_count_bruteforce, distinguishable_count_bruteforce};
use coinweigh::solver::{Solver, SolverOptions, Universe};
use coinweigh::strategies::{SortKTiny, SortThreeTiny};
use coinweigh::verify::exhaustive_check;
use coinweigh::{Exec, Goal, PanPolicy};

fn modes() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    #[cfg(feature = "parallel")]
    v.push(("parallel", Exec::Parallel));
    v
}

fn verify(c: &mut Criterion) {
    let mut g = c.benchmark_group("exhaustive_check");
    g.sample_size(10);
    let u3 = Universe::all(8, 3).unwrap();
    let u4 = Universe::all(7, 4).unwrap();
    let sortk = SortKTiny::new(4).unwrap();
    for (name, exec) in modes() {
        g.bench_with_input(BenchmarkId::new("sort3-tiny/n8", name), &exec, |b, &e| {
            b.iter(|| exhaustive_check(&SortThreeTiny, &u3, e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("sortk4/n7", name), &exec, |b, &e| {
            b.iter(|| exhaustive_check(&sortk, &u4, e).unwrap())
        });
    }
    g.finish();
}

fn counting(c: &mut Criterion) {
    let mut g = c.benchmark_group("counting");
    g.sample_size(10);
    for (name, exec) in modes() {
        g.bench_with_input(BenchmarkId::new("distinguishable/n7", name), &exec, |b, &e| {
            b.iter(|| distinguishable_count_bruteforce(7, e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("balance/k5", name), &exec, |b, &e| {
            b.iter(|| balance_count_bruteforce(5, e).unwrap())
        });
    }
    g.finish();
}

fn solver(c: &mut Criterion) {
    let mut g = c.benchmark_group("solver");
    g.sample_size(10);
    let u = Universe::all(5, 3).unwrap();
    for (name, exec) in modes() {
        g.bench_with_input(BenchmarkId::new("huge/n5", name), &exec, |b, &e| {
            b.iter(|| {
                let opts = SolverOptions { exec: e, ..SolverOptions::default() };
                let mut s = Solver::new(&u, PanPolicy::Huge, Goal::Sort, opts).unwrap();
                s.depth_of(&u.full_state(), 10)
            })
        });
    }
    g.finish();
}

criterion_group!(benches, verify, counting, solver);
criterion_main!(benches);
