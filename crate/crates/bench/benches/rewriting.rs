use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gencliff::cubic::char0::build_representation;
use gencliff::cubic::char3::Char3Branch;
use gencliff::ncalg::overlap_check;
use gencliff::parse::{parse_field, parse_ncpoly};
use gencliff::repcheck::{exhaustive_gf3_2x2, minimal_poly_check};
use gencliff::CurvePoint;
use gencliff_bench::{char3, dense_char0, diagonal, qrho};
use std::collections::BTreeMap;
use std::hint::black_box;

fn normal_form(c: &mut Criterion) {
    let st = dense_char0();
    let env: BTreeMap<_, _> = [("w".to_string(), st.named.w.clone())].into();
    let ab = st.quotient.system.alphabet();
    let mut group = c.benchmark_group("normal_form");
    for (name, src) in [("w_cubed", "w^3"), ("y_cubed", "(y1 + y2)^3"), ("mixed", "y2^4 y1^3 x^2 y2")] {
        let p = parse_ncpoly(ab, &qrho(), &env, src).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &p, |b, p| {
            b.iter(|| st.quotient.system.normal_form(black_box(p)))
        });
    }
    group.finish();
}

fn overlaps(c: &mut Criterion) {
    let mut group = c.benchmark_group("overlap_check");
    group.sample_size(10);
    let st = dense_char0();
    group.bench_function("char0_len6", |b| b.iter(|| overlap_check(&st.quotient.system, black_box(6))));
    let e0 = char3(Char3Branch::EZero);
    group.bench_function("char3_e0_len6", |b| b.iter(|| overlap_check(&e0.quotient.system, black_box(6))));
    group.finish();
}

fn representation(c: &mut Criterion) {
    let pres = diagonal();
    let f = qrho();
    let l = parse_field("QQ.rho.ext(T^3 - 2)").unwrap();
    let pt = CurvePoint::new(f.zero(), f.one()).unwrap();
    let mut group = c.benchmark_group("representation");
    group.sample_size(10);
    group.bench_function("build_and_verify", |b| b.iter(|| build_representation(&pres, &pt, &l).unwrap()));
    let rep = build_representation(&pres, &pt, &l).unwrap();
    let gp = pres.to_general();
    group.bench_function("minimal_poly_check", |b| b.iter(|| minimal_poly_check(&gp, &rep).unwrap()));
    group.bench_function("exhaustive_gf3_2x2", |b| b.iter(exhaustive_gf3_2x2));
    group.finish();
}

criterion_group!(benches, normal_form, overlaps, representation);
criterion_main!(benches);
