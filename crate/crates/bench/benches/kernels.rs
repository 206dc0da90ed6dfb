use criterion::{black_box, criterion_group, criterion_main, Criterion};
use cupkernel_core::hermitian::{clifford_family, verify_family};
use cupkernel_core::pipeline::{section3_report, Section3};
use cupkernel_core::{Partition, SchubertRing};
use num_rational::BigRational;

fn normal_forms(c: &mut Criterion) {
    let s = Section3::new().unwrap();
    let e4 = s.compute_e4().unwrap();
    c.bench_function("ps5 h^16*e4", |b| b.iter(|| s.times_h16(black_box(&e4)).unwrap()));
    c.bench_function("ps5 chern class of T", |b| b.iter(|| s.chern_t_ps5().unwrap()));
    c.bench_function("ps5 context", |b| b.iter(|| Section3::new().unwrap()));
}

fn schubert(c: &mut Criterion) {
    let gr = SchubertRing::new(3, 5).unwrap();
    let s1 = gr.class_or_zero(Partition::new(vec![1]).unwrap());
    c.bench_function("Gr(3,5) s[1]^6", |b| {
        b.iter(|| (0..5).try_fold(s1.clone(), |acc, _| gr.multiply(&acc, black_box(&s1))).unwrap())
    });
}

fn hermitian(c: &mut Criterion) {
    let f = clifford_family(12).unwrap();
    let coeffs: Vec<BigRational> = (1..=f.len() as i64).map(|i| BigRational::new(i.into(), (i + 1).into())).collect();
    let m = f.combination(&coeffs).unwrap();
    c.bench_function("12x12 exact rank", |b| b.iter(|| black_box(&m).rank()));
    c.bench_function("12x12 modular invertibility", |b| b.iter(|| black_box(&m).matrix().is_invertible()));
    c.bench_function("12x12 square identity", |b| b.iter(|| f.square_identity_at(black_box(&coeffs)).unwrap()));
    let mut g = c.benchmark_group("family");
    g.sample_size(10);
    g.bench_function("verify_family 1000", |b| b.iter(|| verify_family(1000, 1).unwrap()));
    g.finish();
}

fn report(c: &mut Criterion) {
    let mut g = c.benchmark_group("report");
    g.sample_size(10);
    g.bench_function("section3 without family", |b| b.iter(|| section3_report(None).unwrap()));
    g.finish();
}

criterion_group!(benches, normal_forms, schubert, hermitian, report);
criterion_main!(benches);
