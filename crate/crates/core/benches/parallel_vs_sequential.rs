use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use minkowski_core::finfield::{gl_order_bruteforce_with, reduce_mod_p_with};
use minkowski_core::matgroup::{closure, closure_with, trace_stats_with, wreath_witness};
use minkowski_core::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn group_closure(c: &mut Criterion) {
    let gens = wreath_witness(5, 2).unwrap();
    let mut g = c.benchmark_group("closure S2 wr S5");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| closure_with(&gens, 10_000, exec).unwrap().order())
        });
    }
    g.finish();
}

fn traces_and_reduction(c: &mut Criterion) {
    let group = closure(&wreath_witness(5, 2).unwrap(), 10_000).unwrap();
    let mut g = c.benchmark_group("traces and reduction, order 3840");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new("traces", name), |b| {
            b.iter(|| trace_stats_with(&group, 2, exec).unwrap().fact1_ok)
        });
        g.bench_function(BenchmarkId::new("reduce mod 3", name), |b| {
            b.iter(|| reduce_mod_p_with(&group, 3, exec).unwrap().1.injective)
        });
    }
    g.finish();
}

fn gl_bruteforce(c: &mut Criterion) {
    let mut g = c.benchmark_group("GL_3(F_3) by enumeration");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| gl_order_bruteforce_with(3, 3, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, group_closure, traces_and_reduction, gl_bruteforce);
criterion_main!(benches);
