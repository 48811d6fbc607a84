//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use apolar::{
    apolar_graded, default_names, parse_poly, Field, GradedSubspace, Matrix, Poly, Rational, Ring,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn s(text: &str, n: usize) -> Poly {
    parse_poly(text, Ring::S, &default_names(Ring::S, n)).unwrap()
}

pub fn t(text: &str, n: usize) -> Poly {
    parse_poly(text, Ring::T, &default_names(Ring::T, n)).unwrap()
}

pub fn q(v: i64) -> Rational {
    Rational::from(v)
}

pub fn basis_len(n: usize, k: usize) -> usize {
    apolar::poly::basis_len(n, k)
}

/// Dense form with integer coefficients in `-c..=c`.
pub fn random_form(r: &mut ChaCha8Rng, n: usize, d: usize, c: i64) -> Poly {
    loop {
        let v: Vec<Rational> = (0..basis_len(n, d)).map(|_| q(r.random_range(-c..=c))).collect();
        let f = Poly::from_vector(Ring::S, n, d, &v);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_linear(r: &mut ChaCha8Rng, n: usize, c: i64) -> Poly {
    loop {
        let v: Vec<Rational> = (0..n).map(|_| q(r.random_range(-c..=c))).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return Poly::linear(Ring::S, &v);
        }
    }
}

pub fn random_invertible(r: &mut ChaCha8Rng, n: usize, c: i64) -> Matrix {
    loop {
        let rows: Vec<Vec<Rational>> = (0..n).map(|_| (0..n).map(|_| q(r.random_range(-c..=c))).collect()).collect();
        let m = Matrix::from_rows(n, rows);
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

/// Span of `m * g` over monomials `m`, for generators of degree at most `k`.
pub fn ideal_in_degree(gens: &[Poly], n: usize, k: usize) -> GradedSubspace {
    let mut prods = Vec::new();
    for g in gens.iter().filter(|g| g.degree() <= k) {
        for m in GradedSubspace::<Rational>::full(Ring::T, n, k - g.degree()).polys() {
            prods.push(m.mul(g));
        }
    }
    GradedSubspace::from_polys(Ring::T, n, k, &prods)
}

/// `beta_{1,j}` by brute force: `dim (F^perp)_j - dim T_1 (F^perp)_{j-1}`.
pub fn dense_beta(f: &Poly, j: usize) -> usize {
    let n = f.nvars();
    let cur = apolar_graded(f, j).unwrap().dim();
    if j == 0 {
        return 0;
    }
    let prev = apolar_graded(f, j - 1).unwrap().polys();
    let prods: Vec<Poly> =
        prev.iter().flat_map(|p| (0..n).map(move |i| p.mul(&Poly::var(Ring::T, n, i)))).collect();
    cur - GradedSubspace::from_polys(Ring::T, n, j, &prods).dim()
}

/// Hilbert function from kernel dimensions.
pub fn hilbert_by_kernels(f: &Poly) -> Vec<usize> {
    let n = f.nvars();
    (0..=f.degree()).map(|k| basis_len(n, k) - apolar_graded(f, k).unwrap().dim()).collect()
}

/// Split `f` along the given subspaces of `S_1` by passing to adapted
/// coordinates and sorting terms by variable block. Panics if a term mixes
/// blocks.
pub fn split_by_subspaces(f: &Poly, spaces: &[GradedSubspace]) -> Vec<Poly> {
    let n = f.nvars();
    let rows: Vec<Vec<Rational>> = spaces.iter().flat_map(|s| s.basis().rows().to_vec()).collect();
    let binv = Matrix::from_rows(n, rows);
    let g = f.substitute(&binv.inverse().unwrap());
    let mut blocks = Vec::new();
    let mut start = 0;
    for sp in spaces {
        blocks.push(start..start + sp.dim());
        start += sp.dim();
    }
    let mut parts = vec![Poly::zero(Ring::S, n, f.degree()); spaces.len()];
    for (m, c) in g.terms() {
        let owners: Vec<usize> = (0..n).filter(|&i| m.exps()[i] > 0).map(|i| blocks.iter().position(|b| b.contains(&i)).unwrap()).collect();
        let b = owners[0];
        assert!(owners.iter().all(|&o| o == b), "term mixes blocks");
        parts[b] = parts[b].add(&Poly::new(Ring::S, n, f.degree(), [(m.clone(), c.clone())]).unwrap());
    }
    parts
}
