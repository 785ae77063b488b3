use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kshape_core::bijection::{phi, varphi};
use kshape_core::poly::{self, Weighting};
use kshape_core::{box_enumerate_irreducible, pistol, BoxBound, Pistol};

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    for height in [4, 5] {
        g.bench_function(format!("pistols height {height}"), |b| {
            b.iter(|| pistol::enumerate(black_box(height)).count())
        });
    }
    g.sample_size(10);
    g.bench_function("box k=4", |b| {
        b.iter(|| {
            box_enumerate_irreducible(4, BoxBound::for_k(4))
                .unwrap()
                .len()
        })
    });
    g.finish();
}

fn bijection(c: &mut Criterion) {
    let mut g = c.benchmark_group("bijection");
    for k in [5, 6] {
        let pistols: Vec<Pistol> = pistol::enumerate(k - 1).collect();
        let shapes: Vec<_> = pistols.iter().map(|f| varphi(f).unwrap()).collect();
        g.bench_function(format!("varphi over SP_{}", k - 1), |b| {
            b.iter(|| {
                pistols
                    .iter()
                    .map(|f| varphi(f).unwrap().size())
                    .sum::<usize>()
            })
        });
        g.bench_function(format!("phi over IS_{k}"), |b| {
            b.iter(|| {
                shapes
                    .iter()
                    .map(|p| phi(p, k).unwrap().height())
                    .sum::<usize>()
            })
        });
    }
    g.finish();
}

fn polynomials(c: &mut Criterion) {
    let mut g = c.benchmark_group("poly");
    g.bench_function("gandhi 20", |b| {
        b.iter(|| poly::gandhi(black_box(20)).unwrap())
    });
    g.bench_function("gamma 8", |b| b.iter(|| poly::gamma(black_box(8)).unwrap()));
    g.bench_function("gamma sum over SP_5", |b| {
        b.iter(|| poly::poly_from_pistols(5, Weighting::Gamma).unwrap())
    });
    g.finish();
}

criterion_group!(benches, enumeration, bijection, polynomials);
criterion_main!(benches);
