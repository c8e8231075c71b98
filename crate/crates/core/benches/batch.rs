use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hessrank::batch::{self, Exec};
use hessrank::normform::Mat;
use hessrank::polyring::{parse_polynomial, Polynomial};
use hessrank::sample;
use num_bigint::BigInt;

fn corpus() -> Vec<Polynomial> {
    let mut rng = sample::rng(2024);
    let mut out: Vec<Polynomial> = (0..24).map(|_| sample::polynomial(&mut rng, 4, 3, 5, 6)).collect();
    for s in ["x1^2*x3 + x1*x2*x4 + x2^2*x5", "(x1 + 2*x2)^3", "x1^2 + 5*x2^2", "(x1 + x2)^2 + (x3 + x4)^2"] {
        out.push(parse_polynomial(s, None).unwrap());
    }
    out
}

fn matrices() -> Vec<Mat<BigInt>> {
    let mut rng = sample::rng(99);
    (0..64)
        .map(|_| (0..4).map(|_| (0..4).map(|_| BigInt::from(sample::small_int(&mut rng) % 9)).collect()).collect())
        .filter(|m: &Mat<BigInt>| m.iter().flatten().any(|x| x != &BigInt::from(0)))
        .collect()
}

fn bench_exec(c: &mut Criterion) {
    let polys = corpus();
    let mats = matrices();
    let mut group = c.benchmark_group("batch");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        let name = format!("{exec:?}");
        group.bench_with_input(BenchmarkId::new("rank_profiles", &name), &exec, |b, &e| {
            b.iter(|| batch::rank_profiles(&polys, e))
        });
        group.bench_with_input(BenchmarkId::new("classify_hessian", &name), &exec, |b, &e| {
            b.iter(|| batch::classify_all(&polys, e))
        });
        group.bench_with_input(BenchmarkId::new("weak_smith_int", &name), &exec, |b, &e| {
            b.iter(|| batch::weak_smith_all(&mats, e))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_exec);
criterion_main!(benches);
