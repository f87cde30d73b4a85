//! Sequential against rayon execution for the hot paths.
//!
//! Without the `parallel` feature both variants run sequentially.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use pfsign_core::arith::{dirichlet_convolve_with, dirichlet_inverse_neumann_with, dirichlet_inverse_recursive};
use pfsign_core::encoding::{encode_with, experiment_table_with};
use pfsign_core::series::kernel_set;
use pfsign_core::{Execution, FunctionName, KernelKind};

const N: usize = 2000;
const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn convolution(c: &mut Criterion) {
    let f = FunctionName::Phi.sequence(N).unwrap();
    let g = FunctionName::PartitionSeq.sequence(N).unwrap();
    let mut group = c.benchmark_group("dirichlet_convolve");
    for (label, exec) in MODES {
        group.bench_function(BenchmarkId::new(label, N), |b| {
            b.iter(|| dirichlet_convolve_with(black_box(&f), black_box(&g), exec).unwrap())
        });
    }
    group.finish();
}

fn neumann_inverse(c: &mut Criterion) {
    let n = 500;
    let f = FunctionName::DivisorCount.sequence(n).unwrap();
    let mut group = c.benchmark_group("neumann_inverse");
    for (label, exec) in MODES {
        group.bench_function(BenchmarkId::new(label, n), |b| {
            b.iter(|| dirichlet_inverse_neumann_with(black_box(&f), exec).unwrap())
        });
    }
    group.finish();
}

fn encoding(c: &mut Criterion) {
    let kernels = kernel_set(N);
    let finv = dirichlet_inverse_recursive(&FunctionName::Phi.sequence(N).unwrap()).unwrap();
    let mut group = c.benchmark_group("encode_qstar");
    group.sample_size(20);
    for (label, exec) in MODES {
        group.bench_function(BenchmarkId::new(label, N), |b| {
            b.iter(|| encode_with(black_box(&finv), KernelKind::QStar, &kernels, exec))
        });
    }
    group.finish();
}

fn tables(c: &mut Criterion) {
    let n = 400;
    let mut group = c.benchmark_group("experiment_table");
    group.sample_size(10);
    for (label, exec) in MODES {
        group.bench_function(BenchmarkId::new(label, n), |b| {
            b.iter(|| experiment_table_with(FunctionName::PartitionSeq, n, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, convolution, neumann_inverse, encoding, tables);
criterion_main!(benches);
