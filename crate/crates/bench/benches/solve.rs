use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use wed_core::generate::{gen_instance, GenKind, GenParams};
use wed_core::oracle::brute_force_wed;
use wed_core::unipolar::{solve_unipolar, UnipolarInstance};
use wed_core::{solve_wed, SolverOptions};

fn cographs(c: &mut Criterion) {
    let mut group = c.benchmark_group("cograph");
    for n in [100usize, 250, 500] {
        let mut params = GenParams::new(GenKind::Cograph, n, 0.5, 7).weights(1, 100, 0.1);
        params.connected = true;
        let inst = gen_instance(&params).unwrap().instance;
        group.bench_with_input(BenchmarkId::new("solve_wed", n), &inst, |b, inst| {
            b.iter(|| solve_wed(black_box(inst)))
        });
        group.bench_with_input(
            BenchmarkId::new("solve_wed_parallel", n),
            &inst,
            |b, inst| {
                b.iter(|| {
                    wed_core::solver::solve_wed_with(
                        black_box(inst),
                        &SolverOptions { parallel: true },
                    )
                })
            },
        );
    }
    group.finish();
}

fn filtered_gnp(c: &mut Criterion) {
    let mut group = c.benchmark_group("gnp_filtered");
    for n in [10usize, 14] {
        let inst =
            gen_instance(&GenParams::new(GenKind::GnpFiltered, n, 0.5, 3).weights(1, 100, 0.1))
                .unwrap()
                .instance;
        group.bench_with_input(BenchmarkId::new("solve_wed", n), &inst, |b, inst| {
            b.iter(|| solve_wed(black_box(inst)))
        });
        group.bench_with_input(BenchmarkId::new("oracle", n), &inst, |b, inst| {
            b.iter(|| brute_force_wed(black_box(inst)))
        });
    }
    group.finish();
}

fn unipolar(c: &mut Criterion) {
    let mut group = c.benchmark_group("unipolar");
    for n in [10usize, 14] {
        let mut params = GenParams::new(GenKind::Unipolar, n, 0.3, 11).weights(1, 100, 0.0);
        params.p6_free = true;
        params.b_size = Some(3);
        let gen = gen_instance(&params).unwrap();
        let part = gen.partition.unwrap();
        group.bench_function(BenchmarkId::new("solve_unipolar", n), |b| {
            let uni = UnipolarInstance::from_partition(&gen.instance, &part).unwrap();
            b.iter(|| solve_unipolar(black_box(&uni)))
        });
    }
    group.finish();
}

criterion_group!(benches, cographs, filtered_gnp, unipolar);
criterion_main!(benches);
