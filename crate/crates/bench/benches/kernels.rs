use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use markov_multisets::draws::{
    hypergeometric_composite, hypergeometric_kernel, multinomial_closed_form, multinomial_kernel,
};
use markov_multisets::multiset::{arr_kernel, dd_kernel};
use markov_multisets::rat::rat;
use markov_multisets::{Dist, FinSet, Kernel};

// Kernels are lazy, so each iteration forces every row.
fn force(k: &Kernel) -> usize {
    k.materialize().dom().len()
}

fn draws(c: &mut Criterion) {
    let y = FinSet::atoms(["a", "b", "c"]).unwrap();
    let f = Kernel::state(&Dist::new(&y, vec![rat(1, 6), rat(1, 3), rat(1, 2)]).unwrap());
    c.bench_function("multinomial composite |Y|=3 K=5", |b| {
        b.iter(|| force(&multinomial_kernel(black_box(&f), 5)))
    });
    c.bench_function("multinomial closed form |Y|=3 K=5", |b| {
        b.iter(|| force(&multinomial_closed_form(black_box(&f), 5)))
    });
    c.bench_function("hypergeometric closed form |X|=3 L=6 K=3", |b| {
        b.iter(|| force(&hypergeometric_kernel(black_box(&y), 6, 3).unwrap()))
    });
    c.bench_function("hypergeometric iterated DD |X|=3 L=6 K=3", |b| {
        b.iter(|| force(&hypergeometric_composite(black_box(&y), 6, 3).unwrap()))
    });
}

fn multisets(c: &mut Criterion) {
    let x = FinSet::atoms(["a", "b", "c"]).unwrap();
    c.bench_function("arr |X|=3 K=5", |b| {
        b.iter(|| force(&arr_kernel(black_box(&x), 5)))
    });
    c.bench_function("DD |X|=3 K=6", |b| {
        b.iter(|| force(&dd_kernel(black_box(&x), 6)))
    });
}

criterion_group!(benches, draws, multisets);
criterion_main!(benches);
