use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use posaudit_core::character::{dixon_table, fusion_tensor, ClassStructure};
use posaudit_core::construction::{build_g, find_q8_in_gl42, Counterexample};
use posaudit_core::cyclotomic::Cyclotomic;

fn construction(c: &mut Criterion) {
    c.bench_function("find_q8_in_gl42", |b| b.iter(find_q8_in_gl42));
    let rho = find_q8_in_gl42();
    c.bench_function("build_g_and_classes", |b| {
        b.iter(|| {
            let cx = build_g(black_box(&rho)).unwrap();
            ClassStructure::new(cx.group().clone())
        })
    });
}

fn characters(c: &mut Criterion) {
    let cx = Counterexample::canonical();
    let ctx = ClassStructure::new(cx.group().clone());
    let mut group = c.benchmark_group("g128");
    group.sample_size(20);
    group.bench_function("dixon_table", |b| b.iter(|| dixon_table(black_box(&ctx)).unwrap()));
    let table = dixon_table(&ctx).unwrap();
    group.bench_function("fusion_tensor", |b| {
        b.iter(|| fusion_tensor(black_box(&table)).unwrap())
    });
    group.finish();
}

fn arithmetic(c: &mut Criterion) {
    let a = Cyclotomic::from_int_coeffs(16, &[1, -2, 0, 3, 1, 0, -1, 2]);
    let b = Cyclotomic::from_int_coeffs(16, &[0, 1, 1, -1, 2, 0, 0, -3]);
    c.bench_function("cyclotomic_mul_16", |bench| {
        bench.iter(|| black_box(&a) * black_box(&b))
    });
}

criterion_group!(benches, construction, characters, arithmetic);
criterion_main!(benches);
