use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use commhom::homology::elementary_divisors;
use commhom::simplicial::torus_quotient_homology;
use commhom::weyl::{generate, molien_poincare, DEFAULT_ELEMENT_CAP};
use commhom::wps::proj_degree;
use commhom::{build_root_datum, IntMatrix};

fn weyl_enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("weyl_generate");
    for t in ["A3", "B4", "F4", "D5"] {
        let d = build_root_datum(t.parse().unwrap()).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(t), &d, |b, d| {
            b.iter(|| generate(black_box(d), DEFAULT_ELEMENT_CAP).unwrap())
        });
    }
    g.finish();
}

fn molien(c: &mut Criterion) {
    let w = generate(&build_root_datum("F4".parse().unwrap()).unwrap(), DEFAULT_ELEMENT_CAP).unwrap();
    c.bench_function("molien_F4_n4_deg12", |b| b.iter(|| molien_poincare(black_box(&w), 4, 12).unwrap()));
}

fn smith(c: &mut Criterion) {
    // deterministic dense matrix with small entries
    let rows: Vec<Vec<i64>> = (0..24).map(|i| (0..24).map(|j| ((i * 7 + j * 13 + i * j) % 11) - 5).collect()).collect();
    let m = IntMatrix::from_rows(&rows);
    c.bench_function("snf_24x24", |b| b.iter(|| elementary_divisors(black_box(&m))));
}

fn weighted_degree(c: &mut Criterion) {
    let e8 = [1u64, 2, 3, 4, 6, 5, 4, 3, 2];
    c.bench_function("proj_degree_E8_k4", |b| b.iter(|| proj_degree(black_box(&e8), 4).unwrap()));
}

fn simplicial(c: &mut Criterion) {
    let mut g = c.benchmark_group("torus_quotient");
    g.sample_size(10);
    for n in [2usize, 3] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| torus_quotient_homology(n).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, weyl_enumeration, molien, smith, weighted_degree, simplicial);
criterion_main!(benches);
