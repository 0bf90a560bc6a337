use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use geokit::lattice::IntMatrix;
use geokit::recipe::builtin_recipe;
use geokit::sweep::{cokernels, cokernels_seq, grid, sweep_recipe, sweep_recipe_seq};

fn random_matrices(count: usize, size: usize) -> Vec<IntMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..count)
        .map(|_| {
            let rows: Vec<Vec<i64>> = (0..size)
                .map(|_| (0..size).map(|_| rng.gen_range(-20..=20)).collect())
                .collect();
            IntMatrix::from_rows(size, &rows).unwrap()
        })
        .collect()
}

fn bench_snf(c: &mut Criterion) {
    let mut g = c.benchmark_group("cokernel_batch");
    for size in [4, 8] {
        let ms = random_matrices(256, size);
        g.bench_with_input(BenchmarkId::new("seq", size), &ms, |b, ms| {
            b.iter(|| cokernels_seq(ms))
        });
        g.bench_with_input(BenchmarkId::new("par", size), &ms, |b, ms| {
            b.iter(|| cokernels(ms))
        });
    }
    g.finish();
}

fn bench_recipes(c: &mut Criterion) {
    let mut g = c.benchmark_group("recipe_sweep");
    g.sample_size(10);
    let yn = builtin_recipe("Yn").unwrap();
    let pts = grid(&[("n", 2..=8), ("m", 1..=3)]);
    g.bench_function("Yn/seq", |b| b.iter(|| sweep_recipe_seq(&yn, &pts)));
    g.bench_function("Yn/par", |b| b.iter(|| sweep_recipe(&yn, &pts)));
    let x1 = builtin_recipe("X1").unwrap();
    let pts = grid(&[("p", 1..=7), ("q", 1..=3)]);
    g.bench_function("X1/seq", |b| b.iter(|| sweep_recipe_seq(&x1, &pts)));
    g.bench_function("X1/par", |b| b.iter(|| sweep_recipe(&x1, &pts)));
    g.finish();
}

criterion_group!(benches, bench_snf, bench_recipes);
criterion_main!(benches);
