use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use springer_core::poly::MultiPoly;
use springer_core::rep::{construct_generic, Decomposition, SpringerModule};
use springer_core::springer::{groebner, tanisaki_generators, GradedQuotient};
use springer_core::tableaux::Partition;
use springer_core::{Cyclotomic, Rational};

fn coinvariant_groebner(c: &mut Criterion) {
    let mu = Partition::new(vec![1; 5]).unwrap();
    let gens: Vec<MultiPoly> = tanisaki_generators(&mu).unwrap();
    c.bench_function("groebner S_5 coinvariants", |b| {
        b.iter(|| groebner(black_box(&gens)).unwrap())
    });
    c.bench_function("graded quotient (2,1,1,1)", |b| {
        let mu = Partition::new(vec![2, 1, 1, 1]).unwrap();
        b.iter(|| GradedQuotient::new(black_box(&mu)).unwrap())
    });
}

fn cyclotomic_mul(c: &mut Criterion) {
    let coeffs = |seed: i64| -> Vec<Rational> { (0..6).map(|i| Rational::new(seed * i - 3, i + 2)).collect() };
    let a = Cyclotomic::from_coeffs(7, &coeffs(5)).unwrap();
    let b = Cyclotomic::from_coeffs(7, &coeffs(-3)).unwrap();
    c.bench_function("cyclotomic mul Q(ζ_7)", |bench| {
        bench.iter(|| black_box(&a) * black_box(&b))
    });
}

fn procedure(c: &mut Criterion) {
    let mu = Partition::new(vec![1; 4]).unwrap();
    let q = Arc::new(GradedQuotient::new(&mu).unwrap());
    let module = SpringerModule::from_quotient(q, 1, 4).unwrap();
    let dec = Decomposition::new(&module).unwrap();
    c.bench_function("construct_generic (1,1,1,1) k=1 l=4", |b| {
        b.iter(|| construct_generic(black_box(&dec)).unwrap())
    });
    let g = construct_generic(&dec).unwrap();
    c.bench_function("generates (1,1,1,1) k=1 l=4", |b| {
        b.iter(|| dec.generates(black_box(&g.zf)))
    });
}

criterion_group!(benches, coinvariant_groebner, cyclotomic_mul, procedure);
criterion_main!(benches);
