use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mbar_core::critical::solve_critical;
use mbar_core::genus0::{c1, ch0};
use mbar_core::graphs::{enumerate_stable, tree_oracle_equivariant};
use mbar_core::pipeline::{b0_closed, b1_closed, b2_closed, ch_direct, InputCharacteristics};
use mbar_core::symfun::{ss_exp, ss_log, ss_pleth_inverse, ss_plethysm};
use mbar_core::{Partition, SymSeries};

fn plethystic(c: &mut Criterion) {
    let mut g = c.benchmark_group("plethystic");
    for d in [6u32, 8, 10] {
        let f = ch0(d);
        let u = c1(d);
        g.bench_with_input(BenchmarkId::new("exp_log", d), &f, |b, f| {
            b.iter(|| ss_log(&ss_exp(black_box(f)).unwrap()).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("inverse", d), &u, |b, u| b.iter(|| ss_pleth_inverse(black_box(u)).unwrap()));
        g.bench_with_input(BenchmarkId::new("plethysm", d), &(f.clone(), u.clone()), |b, (f, u)| {
            b.iter(|| ss_plethysm(black_box(f), black_box(u)).unwrap())
        });
    }
    g.finish();
}

fn pipeline(c: &mut Criterion) {
    let mut g = c.benchmark_group("pipeline");
    g.sample_size(10);
    let inp = InputCharacteristics::geometric(10);
    g.bench_function("b0_closed/6", |b| b.iter(|| b0_closed(&inp.a0, 6).unwrap()));
    g.bench_function("b1_closed/5", |b| b.iter(|| b1_closed(&inp.a0, &inp.a1, 5).unwrap()));
    g.bench_function("b2_closed/4", |b| b.iter(|| b2_closed(&inp.a0, &inp.a1, &inp.a2, 4).unwrap()));
    for (genus, d) in [(0u32, 6u32), (1, 5), (2, 4)] {
        g.bench_function(format!("ch_direct/g{genus}/{d}"), |b| b.iter(|| ch_direct(&inp, genus, d).unwrap()));
    }
    g.bench_function("solve_critical/6", |b| {
        b.iter(|| solve_critical(&inp.a0, &SymSeries::zero(9), 6, 2).unwrap())
    });
    g.finish();
}

fn oracles(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracles");
    g.sample_size(10);
    g.bench_function("enumerate_stable/2,1", |b| b.iter(|| enumerate_stable(2, 1).unwrap()));
    g.bench_function("tree_oracle/6", |b| b.iter(|| tree_oracle_equivariant(6, &Partition::new(vec![1; 6])).unwrap()));
    g.finish();
}

criterion_group!(benches, plethystic, pipeline, oracles);
criterion_main!(benches);
