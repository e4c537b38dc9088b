use criterion::{black_box, criterion_group, criterion_main, Criterion};

use k3mirror_bench::pseudo_random_matrix;
use k3mirror_core::catalog::{embed_named, gram_of, orthogonal_complement, roots_of, NamedLattice};
use k3mirror_core::linalg::{det_exact, hnf, snf};

fn normal_forms(c: &mut Criterion) {
    let a = pseudo_random_matrix(12, 16, 7);
    c.bench_function("hnf 12x16", |b| b.iter(|| hnf(black_box(&a))));
    c.bench_function("snf 12x16", |b| b.iter(|| snf(black_box(&a))));
    let sq = pseudo_random_matrix(16, 16, 11);
    c.bench_function("bareiss det 16x16", |b| b.iter(|| det_exact(black_box(&sq))));
}

fn lattices(c: &mut Criterion) {
    let e8 = gram_of(&"E8".parse::<NamedLattice>().unwrap());
    c.bench_function("roots of E8", |b| b.iter(|| roots_of(black_box(&e8)).unwrap()));
    let k3 = NamedLattice::k3();
    let sub: NamedLattice = "U+U+A2".parse().unwrap();
    c.bench_function("complement of U+U+A2 in K3", |b| {
        b.iter(|| orthogonal_complement(&embed_named(&k3, black_box(&sub)).unwrap()).unwrap())
    });
}

criterion_group!(benches, normal_forms, lattices);
criterion_main!(benches);
