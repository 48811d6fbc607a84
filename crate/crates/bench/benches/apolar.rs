use std::hint::black_box;

use apolar::{
    apolar_profile, check_degree_bound_certified, decompose, emit_limit_family, is_apolar_family, plane_apolar_family,
    refine, DecomposeOptions, DecompositionCertificate, ParamPoly,
};
use apolar_bench::{form, gallery};
use criterion::{criterion_group, criterion_main, Criterion};

fn profiles(c: &mut Criterion) {
    let mut g = c.benchmark_group("apolar_profile");
    for (name, f) in gallery() {
        g.bench_function(name, |b| b.iter(|| apolar_profile(black_box(&f)).unwrap()));
    }
    g.finish();
}

fn degree_bounds(c: &mut Criterion) {
    let mut g = c.benchmark_group("degree_bound_certified");
    for (name, f) in gallery() {
        let p = apolar_profile(&f).unwrap();
        g.bench_function(name, |b| b.iter(|| check_degree_bound_certified(black_box(&f), &p)));
    }
    g.finish();
}

fn decomposition(c: &mut Criterion) {
    let opts = DecomposeOptions::default();
    let mut g = c.benchmark_group("decompose_refine");
    for (name, f) in gallery() {
        g.bench_function(name, |b| {
            b.iter(|| {
                let cert = decompose(black_box(&f), &opts).unwrap();
                refine(&cert, &f, &opts).unwrap()
            })
        });
    }
    g.finish();
}

fn families(c: &mut Criterion) {
    let f = form("x*y^5 + y^3*z^3", 3);
    let opts = DecomposeOptions::default();
    let DecompositionCertificate::LimitNormalForm(nf) = decompose(&f, &opts).unwrap() else {
        panic!("expected a limit normal form")
    };
    c.bench_function("emit_limit_family_sextic", |b| b.iter(|| emit_limit_family(black_box(&nf)).unwrap()));
    c.bench_function("plane_apolar_family_sextic", |b| b.iter(|| plane_apolar_family(black_box(&f), &opts).unwrap()));
    let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let fam = ParamPoly::parse("x^3 + y^3 + z^3 + t*(x + y + z)^3", &vars).unwrap();
    c.bench_function("is_apolar_family_cubic", |b| b.iter(|| is_apolar_family(black_box(&fam)).unwrap()));
}

criterion_group!(benches, profiles, degree_bounds, decomposition, families);
criterion_main!(benches);
