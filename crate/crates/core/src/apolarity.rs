//! Catalecticants, graded pieces of apolar ideals, conciseness and linear series.

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::{rowspace, Matrix, Rref};
use crate::poly::{Basis, LinearMap, Monomial, Poly, Ring};

/// A subspace of `S_k` or `T_k`, stored as an RREF basis over the monomial basis.
#[derive(Clone, PartialEq, Debug)]
pub struct GradedSubspace<K: Field = Rational> {
    pub ring: Ring,
    pub n: usize,
    pub k: usize,
    basis: Matrix<K>,
}

impl<K: Field> GradedSubspace<K> {
    /// Span of the given coordinate rows.
    pub fn from_rows(ring: Ring, n: usize, k: usize, rows: Matrix<K>) -> Self {
        assert_eq!(rows.ncols(), Basis::get(n, k).len(), "row length");
        GradedSubspace { ring, n, k, basis: rows.rref().matrix }
    }

    pub fn from_polys(ring: Ring, n: usize, k: usize, polys: &[Poly<K>]) -> Self {
        let cols = Basis::get(n, k).len();
        let rows = polys
            .iter()
            .map(|p| {
                assert!(p.is_zero() || (p.degree() == k && p.nvars() == n), "element of wrong degree");
                if p.is_zero() {
                    vec![K::zero(); cols]
                } else {
                    p.to_vector()
                }
            })
            .collect();
        Self::from_rows(ring, n, k, Matrix::from_rows(cols, rows))
    }

    pub fn zero(ring: Ring, n: usize, k: usize) -> Self {
        GradedSubspace { ring, n, k, basis: Matrix::zeros(0, Basis::get(n, k).len()) }
    }

    pub fn full(ring: Ring, n: usize, k: usize) -> Self {
        GradedSubspace { ring, n, k, basis: Matrix::identity(Basis::get(n, k).len()) }
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &Matrix<K> {
        &self.basis
    }

    /// Basis elements as forms.
    pub fn polys(&self) -> Vec<Poly<K>> {
        self.basis.rows().iter().map(|r| Poly::from_vector(self.ring, self.n, self.k, r)).collect()
    }

    fn rref(&self) -> Rref<K> {
        self.basis.rref()
    }

    pub fn contains_vector(&self, v: &[K]) -> bool {
        rowspace::contains(&self.rref(), v)
    }

    pub fn contains(&self, p: &Poly<K>) -> bool {
        if p.is_zero() {
            return true;
        }
        p.ring() == self.ring && p.nvars() == self.n && p.degree() == self.k && self.contains_vector(&p.to_vector())
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        let r = other.rref();
        self.basis.rows().iter().all(|v| rowspace::contains(&r, v))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        GradedSubspace { basis: rowspace::intersect(&self.basis, &other.basis), ..self.clone() }
    }

    pub fn sum(&self, other: &Self) -> Self {
        GradedSubspace { basis: rowspace::sum(&self.basis, &other.basis), ..self.clone() }
    }
}

/// `C^i_F : T_{d-i} -> S_i`, rows indexed by `T_{d-i}`, columns by `S_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Catalecticant<K: Field = Rational> {
    pub i: usize,
    pub matrix: Matrix<K>,
}

pub fn catalecticant<K: Field>(f: &Poly<K>, i: usize) -> Result<Catalecticant<K>> {
    let d = f.degree();
    if i > d {
        return Err(Error::DegreeOutOfRange { degree: i, max: d });
    }
    Ok(Catalecticant { i, matrix: catalecticant_matrix(f, d - i) })
}

/// Matrix of `T_k -> S_{d-k}`.
fn catalecticant_matrix<K: Field>(f: &Poly<K>, k: usize) -> Matrix<K> {
    let n = f.nvars();
    let d = f.degree();
    let rows_b = Basis::get(n, k);
    let cols_b = Basis::get(n, d - k);
    let mut m = Matrix::zeros(rows_b.len(), cols_b.len());
    for (r, a) in rows_b.monomials.iter().enumerate() {
        for (b, c) in f.terms() {
            if let Some(q) = a.quotient_of(b) {
                let factor = Monomial::derivative_factor(a, b);
                m.set(r, cols_b.index_of(&q).unwrap(), c.mul_ref(&K::from_i64(factor as i64)));
            }
        }
    }
    m
}

/// `(F^perp)_k` for `0 <= k <= d + 1`.
pub fn apolar_graded<K: Field>(f: &Poly<K>, k: usize) -> Result<GradedSubspace<K>> {
    let d = f.degree();
    let n = f.nvars();
    if k > d + 1 {
        return Err(Error::DegreeOutOfRange { degree: k, max: d + 1 });
    }
    if k == d + 1 || f.is_zero() {
        return Ok(GradedSubspace::full(Ring::T, n, k));
    }
    Ok(GradedSubspace { ring: Ring::T, n, k, basis: catalecticant_matrix(f, k).left_kernel() })
}

/// `T_{d-k} -| F`, the image of `C^k_F` inside `S_k`.
pub fn derivative_space<K: Field>(f: &Poly<K>, k: usize) -> GradedSubspace<K> {
    let d = f.degree();
    if k > d || f.is_zero() {
        return GradedSubspace::zero(Ring::S, f.nvars(), k);
    }
    GradedSubspace::from_rows(Ring::S, f.nvars(), k, catalecticant_matrix(f, d - k))
}

/// The span `<F>` in `S_1`.
pub fn span_of<K: Field>(f: &Poly<K>) -> Result<GradedSubspace<K>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Ok(GradedSubspace::zero(Ring::S, f.nvars(), 1));
    }
    Ok(derivative_space(f, 1))
}

pub fn is_concise<K: Field>(f: &Poly<K>) -> Result<bool> {
    Ok(span_of(f)?.dim() == f.nvars())
}

/// `F = reduced(embedding * x)` with `reduced` concise in `m` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct ConciseReduction<K: Field = Rational> {
    pub reduced: Poly<K>,
    /// `m x n`: new variable `u_k` maps to `sum_j e[k][j] x_j`.
    pub embedding: LinearMap<K>,
}

impl<K: Field> ConciseReduction<K> {
    /// Recover the original form.
    pub fn expand(&self) -> Poly<K> {
        self.reduced.substitute(self.embedding.matrix())
    }
}

pub fn concise_reduce<K: Field>(f: &Poly<K>) -> Result<ConciseReduction<K>> {
    let span = span_of(f)?;
    let n = f.nvars();
    let m = span.dim();
    let Rref { matrix: ell, pivots } = span.basis().rref();
    let mut p = ell.clone();
    for j in (0..n).filter(|j| !pivots.contains(j)) {
        let mut row = vec![K::zero(); n];
        row[j] = K::one();
        p.push_row(row);
    }
    let pinv = p.inverse()?;
    let sub = pinv.select_columns(&(0..m).collect::<Vec<_>>());
    let reduced = f.substitute(&sub);
    Ok(ConciseReduction { reduced, embedding: LinearMap::new(ell) })
}

fn check_series<K: Field>(w: &[Poly<K>]) -> Result<(usize, usize)> {
    let first = w.first().ok_or(Error::MixedDegrees)?;
    let (n, d) = (first.nvars(), first.degree());
    if w.iter().any(|g| g.nvars() != n || (g.degree() != d && !g.is_zero()) || g.ring() != Ring::S) {
        return Err(Error::MixedDegrees);
    }
    Ok((n, d))
}

/// `(W^perp)_k`, the common annihilator of a linear series.
pub fn series_apolar_graded<K: Field>(w: &[Poly<K>], k: usize) -> Result<GradedSubspace<K>> {
    let (n, d) = check_series(w)?;
    if k > d + 1 {
        return Err(Error::DegreeOutOfRange { degree: k, max: d + 1 });
    }
    if k == d + 1 {
        return Ok(GradedSubspace::full(Ring::T, n, k));
    }
    let mut m = Matrix::zeros(Basis::get(n, k).len(), 0);
    for g in w.iter().filter(|g| !g.is_zero()) {
        m = m.hstack(&catalecticant_matrix(g, k));
    }
    Ok(GradedSubspace { ring: Ring::T, n, k, basis: m.left_kernel() })
}

/// First prolongation of the span of a linear series.
pub fn prolongation<K: Field>(w: &[Poly<K>]) -> Result<GradedSubspace<K>> {
    let (n, d) = check_series(w)?;
    Ok(prolong(&GradedSubspace::from_polys(Ring::S, n, d, w)))
}

/// `{G in S_{k+1} : every d G / d x_i lies in U}` for `U` in `S_k`.
///
/// Unknowns are the would-be partials `u_i in U`; they must satisfy
/// `d u_p / d x_q = d u_q / d x_p`, and then `G = sum x_i u_i / (k + 1)`.
pub fn prolong<K: Field>(u: &GradedSubspace<K>) -> GradedSubspace<K> {
    let (n, k) = (u.n, u.k);
    let dim = u.dim();
    if dim == 0 {
        return GradedSubspace::zero(Ring::S, n, k + 1);
    }
    let elems = u.polys();
    let kernel = if k == 0 || n == 1 {
        Matrix::identity(n * dim)
    } else {
        let lower = Basis::get(n, k - 1).len();
        // partials[r][q] = d U_r / d x_q as a vector in S_{k-1}
        let partials: Vec<Vec<Vec<K>>> =
            elems.iter().map(|e| (0..n).map(|q| e.partial(q).to_vector()).collect()).collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).collect();
        let mut a = Matrix::zeros(pairs.len() * lower, n * dim);
        for (pi, &(p, q)) in pairs.iter().enumerate() {
            for r in 0..dim {
                for (row, v) in partials[r][q].iter().enumerate() {
                    if !v.is_zero() {
                        a.set(pi * lower + row, p * dim + r, v.clone());
                    }
                }
                for (row, v) in partials[r][p].iter().enumerate() {
                    if !v.is_zero() {
                        let cur = a.get(pi * lower + row, q * dim + r).sub_ref(v);
                        a.set(pi * lower + row, q * dim + r, cur);
                    }
                }
            }
        }
        a.kernel()
    };
    let scale = K::from_i64(k as i64 + 1).inv().unwrap();
    let mut gens = Vec::with_capacity(kernel.nrows());
    for sol in kernel.rows() {
        let mut g = Poly::zero(Ring::S, n, k + 1);
        for i in 0..n {
            let mut ui = Poly::zero(Ring::S, n, k);
            for r in 0..dim {
                if !sol[i * dim + r].is_zero() {
                    ui = ui.add(&elems[r].scale(&sol[i * dim + r]));
                }
            }
            g = g.add(&Poly::var(Ring::S, n, i).mul(&ui));
        }
        gens.push(g.scale(&scale));
    }
    GradedSubspace::from_polys(Ring::S, n, k + 1, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{default_names, parse_poly};

    fn s(text: &str, n: usize) -> Poly {
        parse_poly(text, Ring::S, &default_names(Ring::S, n)).unwrap()
    }

    fn t(text: &str, n: usize) -> Poly {
        parse_poly(text, Ring::T, &default_names(Ring::T, n)).unwrap()
    }

    #[test]
    fn catalecticant_ranks() {
        assert_eq!(catalecticant(&s("x^5", 2), 1).unwrap().matrix.rank(), 1);
        assert_eq!(catalecticant(&s("x^3 + y^3 + z^3", 3), 1).unwrap().matrix.rank(), 3);
        assert_eq!(catalecticant(&s("x*y^2", 2), 1).unwrap().matrix.rank(), 2);
        assert!(catalecticant(&s("x*y^2", 2), 4).is_err());
    }

    #[test]
    fn apolar_pieces() {
        let f = s("x*y^2", 2);
        assert_eq!(apolar_graded(&f, 2).unwrap(), GradedSubspace::from_polys(Ring::T, 2, 2, &[t("a^2", 2)]));
        let g = s("x^2*y - y^2*z", 3);
        let want = GradedSubspace::from_polys(Ring::T, 3, 2, &[t("c^2", 3), t("a*c", 3), t("a^2 + b*c", 3)]);
        assert_eq!(apolar_graded(&g, 2).unwrap(), want);
        assert_eq!(apolar_graded(&s("x^4", 2), 1).unwrap().polys(), vec![t("b", 2)]);
        assert_eq!(apolar_graded(&f, 4).unwrap().dim(), 5);
        assert!(apolar_graded(&f, 5).is_err());
    }

    #[test]
    fn spans_and_conciseness() {
        assert_eq!(span_of(&s("x^4", 2)).unwrap().dim(), 1);
        let names: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
        let xyz = parse_poly("x*y*z", Ring::S, &names).unwrap();
        assert_eq!(span_of(&xyz).unwrap().dim(), 3);
        assert!(!is_concise(&xyz).unwrap());
        assert!(is_concise(&s("x*y^2", 2)).unwrap());
        assert!(!is_concise(&s("x^3", 3)).unwrap());
        assert_eq!(span_of(&Poly::<Rational>::zero(Ring::S, 2, 3)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn reductions() {
        let names: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
        let xyz = parse_poly("x*y*z", Ring::S, &names).unwrap();
        let r = concise_reduce(&xyz).unwrap();
        assert_eq!(r.reduced, s("x*y*z", 3));
        assert_eq!(r.expand(), xyz);
        let cube = s("(x+y)^3", 2);
        let r = concise_reduce(&cube).unwrap();
        assert_eq!(r.reduced.nvars(), 1);
        assert_eq!(r.expand(), cube);
        let f = s("x*y^2", 2);
        let r = concise_reduce(&f).unwrap();
        assert_eq!(r.reduced, f);
        assert_eq!(r.embedding, LinearMap::identity(2));
    }

    #[test]
    fn series() {
        let w = [s("x^2", 2), s("y^2", 2)];
        assert_eq!(series_apolar_graded(&w, 2).unwrap().polys(), vec![t("a*b", 2)]);
        let all = [s("x^2", 2), s("x*y", 2), s("y^2", 2)];
        for k in 0..=2 {
            assert_eq!(series_apolar_graded(&all, k).unwrap().dim(), 0);
        }
        assert_eq!(series_apolar_graded(&[s("x^2", 2), s("y^3", 2)], 1), Err(Error::MixedDegrees));
    }

    #[test]
    fn prolongations() {
        let g0 = s("x^4 + y^4", 2);
        let w = [g0.partial(0), g0.partial(1)];
        assert!(prolongation(&w).unwrap().contains(&g0));
        assert_eq!(prolongation(&[s("x^2*y", 2)]).unwrap().dim(), 0);
        let full = [s("x^2", 2), s("x*y", 2), s("y^2", 2)];
        assert_eq!(prolongation(&full).unwrap().dim(), 4);
    }
}
