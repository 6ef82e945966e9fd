use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use torsionlab::par::Execution;
use torsionlab::surgery::{solve_surgery_reps, SolveOptions};
use torsionlab::table::sweep_x;
use torsionlab::verify::{run_suite, VerifyOptions};
use torsionlab::Slope;

const MODES: [(&str, Execution); 2] =
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn verify_suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_suite");
    g.sample_size(10);
    for (name, exec) in MODES {
        let opts = VerifyOptions { trials: 50, exec, ..VerifyOptions::default() };
        g.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, opts| {
            b.iter(|| black_box(run_suite(opts, None)))
        });
    }
    g.finish();
}

fn surgery(c: &mut Criterion) {
    let slope = Slope::new(1, 1).unwrap();
    let mut g = c.benchmark_group("surgery_n-2_1_1");
    g.sample_size(10);
    for (name, exec) in MODES {
        let opts = SolveOptions { exec, ..SolveOptions::default() };
        g.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, opts| {
            b.iter(|| black_box(solve_surgery_reps(-2, slope, opts).unwrap()))
        });
    }
    g.finish();
}

fn table(c: &mut Criterion) {
    let mut g = c.benchmark_group("table_n3_200");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(sweep_x(3, 2.1, 6.0, 200, exec)))
        });
    }
    g.finish();
}

criterion_group!(benches, verify_suite, surgery, table);
criterion_main!(benches);
