use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::splitting::{minimal_polynomial, splitting_space, SplittingSpace};
use super::{verify_direct_sum, DecompositionCertificate, DirectSum, DirectSumPart, LimitNormalForm};
use crate::apolarity::{concise_reduce, is_concise, GradedSubspace};
use crate::error::{Error, Result};
use crate::field::{factor_rational, Factorization, Field, NumberField, NumberFieldElement, Rational, UniPoly};
use crate::ideal::beta1_at;
use crate::linalg::{rowspace, Matrix};
use crate::poly::{LinearMap, Poly, Ring};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// Seed for the choice of a generic splitting map.
    pub seed: u64,
    /// Reject quadrics instead of diagonalizing them.
    pub strict: bool,
}

const MAX_ATTEMPTS: usize = 32;
const PROBES: usize = 4;

pub fn decompose(f: &Poly, opts: &DecomposeOptions) -> Result<DecompositionCertificate> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    decompose_with(f, opts, &mut rng)
}

pub(crate) fn decompose_with(f: &Poly, opts: &DecomposeOptions, rng: &mut ChaCha8Rng) -> Result<DecompositionCertificate> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.degree();
    match d {
        0 => return Err(Error::UnsupportedDegree(0)),
        1 => return Ok(DecompositionCertificate::PowerOfLinearForm { ell: f.clone(), scale: Rational::one() }),
        2 if opts.strict => return Err(Error::UnsupportedDegree(2)),
        _ => {}
    }
    if !is_concise(f)? {
        let reduction = concise_reduce(f)?;
        let inner = decompose_with(&reduction.reduced, opts, rng)?;
        return Ok(DecompositionCertificate::NotConcise { reduction, inner: Box::new(inner) });
    }
    let n = f.nvars();
    if beta1_at(f, d + 1)? > 0 {
        let scale = f.terms().next().map(|(_, c)| c.clone()).unwrap();
        return Ok(DecompositionCertificate::PowerOfLinearForm { ell: Poly::var(Ring::S, n, 0), scale });
    }
    if d == 2 {
        let b = diagonalize_quadric(f);
        let ds = direct_sum_from_blocks(f, &b, &vec![1; n], true)?;
        return Ok(DecompositionCertificate::DirectSum(ds));
    }
    if beta1_at(f, d)? == 0 {
        return Ok(DecompositionCertificate::NotLimitOfDirectSums { reason: "beta_{1,d} = 0".into() });
    }
    let space = splitting_space(f)?;
    if space.dim() == 1 {
        return Err(Error::ScalarSplittingSpace);
    }
    let (m, fac) = generic_member(&space, rng)?;
    if fac.factors.len() >= 2 {
        let parts: Vec<UniPoly> = fac.factors.iter().map(|(p, e)| p.pow(*e as u32)).collect();
        let ds = split_by_factors(f, &m, &parts)?;
        return Ok(DecompositionCertificate::DirectSum(ds));
    }
    let (p, mult) = fac.factors[0].clone();
    if p.degree() == Some(1) {
        let lambda = p.coeff(0).neg_ref();
        return Ok(DecompositionCertificate::LimitNormalForm(normal_form(f, &m, &lambda)?));
    }
    let field = NumberField::new(p.clone())?;
    let lambda = field.root();
    let lift = |q: &Rational| field.from_rational(q);
    let mk = m.map(lift);
    let fk = f.map_coeffs(lift);
    let pk = p.map(lift);
    let lin = UniPoly::linear_root(&lambda);
    let rest = pk.div_exact(&lin)?;
    let ds = split_by_factors(&fk, &mk, &[lin.pow(mult as u32), rest.pow(mult as u32)])?;
    Ok(DecompositionCertificate::DecomposableOverExtension {
        modulus: p,
        inner: Box::new(DecompositionCertificate::<NumberFieldElement>::DirectSum(ds)),
    })
}

fn is_scalar<K: Field>(m: &Matrix<K>) -> bool {
    let c = m.get(0, 0).clone();
    (0..m.nrows()).all(|i| (0..m.ncols()).all(|j| if i == j { *m.get(i, j) == c } else { m.get(i, j).is_zero() }))
}

/// A random member of the splitting space whose minimal polynomial has the
/// most distinct irreducible factors among several probes.
fn generic_member(space: &SplittingSpace, rng: &mut ChaCha8Rng) -> Result<(Matrix, Factorization)> {
    let mut best: Option<(Matrix, Factorization)> = None;
    let mut probes = 0;
    let mut range: i64 = 4;
    for attempt in 0..MAX_ATTEMPTS {
        if attempt > 0 && attempt % PROBES == 0 {
            range *= 2;
        }
        let coeffs: Vec<Rational> = (0..space.dim()).map(|_| Rational::from(rng.random_range(-range..=range))).collect();
        let m = space.combination(&coeffs);
        if is_scalar(&m) {
            continue;
        }
        let fac = factor_rational(&minimal_polynomial(&m));
        probes += 1;
        if best.as_ref().is_none_or(|(_, b)| fac.factors.len() > b.factors.len()) {
            best = Some((m, fac));
        }
        if probes >= PROBES {
            break;
        }
    }
    best.ok_or(Error::DegenerateRandomness(MAX_ATTEMPTS))
}

/// `sum v_a d/dx_a` applied to `f`.
fn apply_linear<K: Field>(v: &[K], f: &Poly<K>) -> Poly<K> {
    let mut out = Poly::zero(Ring::S, f.nvars(), f.degree().saturating_sub(1));
    for (a, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&f.partial(a).scale(c));
        }
    }
    out
}

/// Split along the kernels of the given pairwise coprime polynomials in `m`.
pub(crate) fn split_by_factors<K: Field>(f: &Poly<K>, m: &Matrix<K>, parts: &[UniPoly<K>]) -> Result<DirectSum<K>> {
    let n = f.nvars();
    let blocks: Vec<Matrix<K>> = parts.iter().map(|p| m.eval_poly(p).kernel()).collect();
    let sizes: Vec<usize> = blocks.iter().map(|b| b.nrows()).collect();
    if sizes.iter().sum::<usize>() != n || sizes.contains(&0) {
        return Err(Error::Internal("generalized eigenspaces do not split T_1".into()));
    }
    for (i, bi) in blocks.iter().enumerate() {
        for bj in &blocks[i + 1..] {
            for w in bj.rows() {
                let once = apply_linear(w, f);
                for v in bi.rows() {
                    if !apply_linear(v, &once).is_zero() {
                        return Err(Error::Internal("eigenspace products are not apolar".into()));
                    }
                }
            }
        }
    }
    let cols: Vec<Vec<K>> = blocks.iter().flat_map(|b| b.rows().to_vec()).collect();
    let b = Matrix::from_columns(n, &cols);
    direct_sum_from_blocks(f, &b, &sizes, false)
}

/// Read off summands in the coordinates whose `T_1` basis is the columns of
/// `b`, grouped into consecutive blocks.
pub(crate) fn direct_sum_from_blocks<K: Field>(
    f: &Poly<K>,
    b: &Matrix<K>,
    sizes: &[usize],
    non_unique: bool,
) -> Result<DirectSum<K>> {
    let n = f.nvars();
    let binv = b.inverse()?;
    let mut parts = Vec::with_capacity(sizes.len());
    let mut start = 0;
    for &s in sizes {
        let idx: Vec<usize> = (start..start + s).collect();
        let proj = b.select_columns(&idx).mul(&binv.select_rows(&idx));
        let summand = f.substitute(&proj);
        let subspace = GradedSubspace::from_rows(Ring::S, n, 1, binv.select_rows(&idx));
        parts.push(DirectSumPart { subspace, summand });
        start += s;
    }
    let ds = DirectSum { parts, coordinate_change: LinearMap::new(b.clone()), non_unique };
    verify_direct_sum(f, &ds).map_err(|e| Error::Internal(format!("constructed direct sum is invalid: {e:?}")))?;
    Ok(ds)
}

/// Columns of `B` with `F(Bx)` diagonal, by symmetric elimination.
pub(crate) fn diagonalize_quadric<K: Field>(f: &Poly<K>) -> Matrix<K> {
    let n = f.nvars();
    let half = K::from_i64(2).inv().unwrap();
    let mut a = Matrix::zeros(n, n);
    for (m, c) in f.terms() {
        let idx: Vec<usize> = (0..n).filter(|&i| m.exps()[i] > 0).collect();
        if idx.len() == 1 {
            a.set(idx[0], idx[0], c.clone());
        } else {
            a.set(idx[0], idx[1], c.mul_ref(&half));
            a.set(idx[1], idx[0], c.mul_ref(&half));
        }
    }
    let mut t = Matrix::<K>::identity(n);
    // congruence by an elementary matrix: col/row j += c * col/row i
    let add = |a: &mut Matrix<K>, t: &mut Matrix<K>, j: usize, i: usize, c: &K| {
        for r in 0..n {
            let v = a.get(r, j).add_ref(&a.get(r, i).mul_ref(c));
            a.set(r, j, v);
        }
        for r in 0..n {
            let v = a.get(j, r).add_ref(&a.get(i, r).mul_ref(c));
            a.set(j, r, v);
        }
        for r in 0..n {
            let v = t.get(r, j).add_ref(&t.get(r, i).mul_ref(c));
            t.set(r, j, v);
        }
    };
    for i in 0..n {
        if a.get(i, i).is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a.get(j, j).is_zero()) {
                add(&mut a, &mut t, i, j, &K::one());
            } else if let Some(j) = (i + 1..n).find(|&j| !a.get(i, j).is_zero()) {
                add(&mut a, &mut t, i, j, &K::one());
            }
        }
        if a.get(i, i).is_zero() {
            continue;
        }
        let inv = a.get(i, i).inv().unwrap();
        for j in i + 1..n {
            if !a.get(i, j).is_zero() {
                let c = a.get(i, j).mul_ref(&inv).neg_ref();
                add(&mut a, &mut t, j, i, &c);
            }
        }
    }
    t
}

/// Normal form from a splitting map with the single eigenvalue `lambda`.
pub(crate) fn normal_form<K: Field>(f: &Poly<K>, m: &Matrix<K>, lambda: &K) -> Result<LimitNormalForm<K>> {
    let n = f.nvars();
    let d = f.degree();
    let nil = m.sub(&Matrix::identity(n).scale(lambda));
    if nil.is_zero() {
        return Err(Error::Internal("splitting map is scalar".into()));
    }
    let mut top = nil.clone();
    loop {
        let next = top.mul(&nil);
        if next.is_zero() {
            break;
        }
        top = next;
    }
    let pivots = top.rref().pivots;
    let k = pivots.len();
    let c = top.column(pivots[0]).into_iter().find(|v| !v.is_zero()).unwrap();
    let top = top.scale(&c.inv()?);
    let mut cols: Vec<Vec<K>> = pivots.iter().map(|&j| top.column(j)).collect();
    for &j in &pivots {
        let mut e = vec![K::zero(); n];
        e[j] = K::one();
        cols.push(e);
    }
    let mut span = Matrix::from_rows(n, cols[..k].to_vec());
    for v in top.kernel().rows() {
        if cols.len() == n {
            break;
        }
        if !rowspace::contains(&span.rref(), v) {
            span.push_row(v.clone());
            cols.push(v.clone());
        }
    }
    if cols.len() != n {
        return Err(Error::MalformedNormalForm("could not complete an adapted basis".into()));
    }
    let b = Matrix::from_columns(n, &cols);
    let fnew = f.substitute(&b);
    for (mono, _) in fnew.terms() {
        let e = mono.exps();
        let xdeg: u32 = e[..k].iter().sum();
        let zdeg: u32 = e[2 * k..].iter().sum();
        if xdeg > 1 || (xdeg == 1 && zdeg > 0) {
            return Err(Error::MalformedNormalForm(format!("term outside the normal form shape (k = {k})")));
        }
    }
    let hs: Vec<Poly<K>> = (0..k).map(|i| fnew.partial(i)).collect();
    for i in 0..k {
        for j in i + 1..k {
            if hs[i].partial(k + j) != hs[j].partial(k + i) {
                return Err(Error::MalformedNormalForm("partials are not a gradient".into()));
            }
        }
    }
    let mut h = Poly::zero(Ring::S, n, d);
    let mut xh = Poly::zero(Ring::S, n, d);
    for (i, hi) in hs.iter().enumerate() {
        h = h.add(&Poly::var(Ring::S, n, k + i).mul(hi));
        xh = xh.add(&Poly::var(Ring::S, n, i).mul(hi));
    }
    let h = h.scale(&K::from_i64(d as i64).inv()?);
    let g = fnew.sub(&xh);
    let nf = LimitNormalForm { k, basis: LinearMap::new(b), h, g };
    if nf.assembled() != fnew {
        return Err(Error::MalformedNormalForm("normal form does not reassemble".into()));
    }
    Ok(nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{default_names, parse_poly};

    fn s(text: &str, n: usize) -> Poly {
        parse_poly(text, Ring::S, &default_names(Ring::S, n)).unwrap()
    }

    fn run(text: &str, n: usize) -> DecompositionCertificate {
        decompose(&s(text, n), &DecomposeOptions::default()).unwrap()
    }

    #[test]
    fn fermat_splits() {
        let f = s("x^3 + y^3 + z^3", 3);
        match run("x^3 + y^3 + z^3", 3) {
            DecompositionCertificate::DirectSum(ds) => {
                assert_eq!(verify_direct_sum(&f, &ds), Ok(()));
                assert!(ds.parts.len() >= 2);
            }
            c => panic!("unexpected {c:?}"),
        }
    }

    #[test]
    fn xy2_normal_form() {
        match run("x*y^2", 2) {
            DecompositionCertificate::LimitNormalForm(nf) => {
                assert_eq!(nf.k, 1);
                assert_eq!(nf.h, s("1/3*y^3", 2));
                assert!(nf.g.is_zero());
                assert_eq!(nf.basis, LinearMap::identity(2));
            }
            c => panic!("unexpected {c:?}"),
        }
    }

    #[test]
    fn second_normal_form() {
        let f = s("x^2*y - y^2*z", 3);
        match run("x^2*y - y^2*z", 3) {
            DecompositionCertificate::LimitNormalForm(nf) => {
                assert_eq!(nf.k, 1);
                assert_eq!(f.substitute(nf.basis.matrix()), nf.assembled());
            }
            c => panic!("unexpected {c:?}"),
        }
    }

    #[test]
    fn indecomposable_and_powers() {
        assert_eq!(run("y^2*z - x^3 - x*z^2", 3).kind(), "NotLimitOfDirectSums");
        assert_eq!(run("x*y*z", 3).kind(), "NotLimitOfDirectSums");
        match run("x^3", 3) {
            DecompositionCertificate::NotConcise { inner, .. } => assert_eq!(inner.kind(), "PowerOfLinearForm"),
            c => panic!("unexpected {c:?}"),
        }
    }

    #[test]
    fn irrational_split() {
        // x^3 + y^3 written in coordinates that pair conjugate cube roots
        // (x + sqrt2 y)^3 + (x - sqrt2 y)^3 = 2x^3 + 12xy^2
        let c = run("x^3 + 6*x*y^2", 2);
        let c = match c {
            c @ DecompositionCertificate::DecomposableOverExtension { .. } => c,
            c => panic!("unexpected {c:?}"),
        };
        if let DecompositionCertificate::DecomposableOverExtension { modulus, inner } = c {
            assert_eq!(modulus.degree(), Some(2));
            let DecompositionCertificate::DirectSum(ds) = *inner else { panic!() };
            assert_eq!(ds.parts.len(), 2);
        }
    }

    #[test]
    fn quadrics() {
        let f = s("x*y + z^2", 3);
        match run("x*y + z^2", 3) {
            DecompositionCertificate::DirectSum(ds) => {
                assert!(ds.non_unique);
                assert_eq!(ds.parts.len(), 3);
                assert_eq!(verify_direct_sum(&f, &ds), Ok(()));
            }
            c => panic!("unexpected {c:?}"),
        }
        let strict = DecomposeOptions { strict: true, ..Default::default() };
        assert_eq!(decompose(&f, &strict), Err(Error::UnsupportedDegree(2)));
    }
}
