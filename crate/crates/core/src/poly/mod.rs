//! Homogeneous forms in the ring `S` and operators in the dual ring `T`.
//!
//! The two rings share one representation and are told apart by a [`Ring`]
//! tag. `T` acts on `S` by differentiation: `a_i` acts as `d/dx_i`.

mod parse;

pub use parse::{default_vars, parse_poly, parse_sparse};

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::field::unipoly::push_term;
use crate::field::{Field, Rational};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    /// Forms `x_1, .., x_n`.
    S,
    /// Dual operators `a_1, .., a_n`.
    T,
}

impl Ring {
    pub fn dual(self) -> Ring {
        match self {
            Ring::S => Ring::T,
            Ring::T => Ring::S,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Ring::S => "S",
            Ring::T => "T",
        }
    }
}

/// Exponent vector. Ordered by graded reverse lexicographic order with
/// `x_1 > .. > x_n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        self.divides(other).then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    /// Coefficient of `x^{b-a}` in `d^a x^b`, i.e. `prod b_i! / (b_i - a_i)!`.
    pub fn derivative_factor(a: &Self, b: &Self) -> u64 {
        let mut f: u64 = 1;
        for (&ai, &bi) in a.0.iter().zip(&b.0) {
            for k in 0..ai {
                f *= (bi - k) as u64;
            }
        }
        f
    }

    pub fn format(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomials of degree `k` in `n` variables, largest first.
pub fn monomial_basis(_ring: Ring, n: usize, k: usize) -> Vec<Monomial> {
    Basis::get(n, k).monomials.clone()
}

/// `binom(n + k - 1, k)`, the dimension of `S_k`.
pub fn basis_len(n: usize, k: usize) -> usize {
    if n == 0 {
        return usize::from(k == 0);
    }
    let mut r: u128 = 1;
    for i in 0..k as u128 {
        r = r * (n as u128 + i) / (i + 1);
    }
    r as usize
}

/// Cached monomial basis of a graded piece together with its index map.
#[derive(Debug)]
pub struct Basis {
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    pub fn get(n: usize, k: usize) -> Arc<Basis> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Basis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(b) = cache.lock().unwrap().get(&(n, k)) {
            return b.clone();
        }
        let b = Arc::new(Basis::build(n, k));
        cache.lock().unwrap().insert((n, k), b.clone());
        b
    }

    fn build(n: usize, k: usize) -> Basis {
        let mut monomials = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        if n == 0 {
            if k == 0 {
                monomials.push(Monomial(Vec::new()));
            }
        } else {
            rec(0, k as u32, &mut cur, &mut monomials);
        }
        monomials.sort_by(|a, b| b.cmp(a));
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Basis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// A homogeneous polynomial in `S` or `T`.
///
/// The zero polynomial still carries a nominal degree.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<K: Field = Rational> {
    ring: Ring,
    n: usize,
    degree: usize,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Field> Poly<K> {
    pub fn zero(ring: Ring, n: usize, degree: usize) -> Self {
        Poly { ring, n, degree, terms: BTreeMap::new() }
    }

    /// Build from terms, summing repeated monomials. `degree` is used only
    /// when every coefficient cancels.
    pub fn new(ring: Ring, n: usize, degree: usize, terms: impl IntoIterator<Item = (Monomial, K)>) -> Result<Self> {
        let mut map: BTreeMap<Monomial, K> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != n {
                return Err(Error::VariableCountMismatch(m.nvars(), n));
            }
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&m) {
                Some(v) => v.add_assign_ref(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        let mut deg = None;
        for m in map.keys() {
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d != m.degree() => return Err(Error::NotHomogeneous),
                _ => {}
            }
        }
        Ok(Poly { ring, n, degree: deg.unwrap_or(degree), terms: map })
    }

    pub fn constant(ring: Ring, n: usize, c: K) -> Self {
        Self::new(ring, n, 0, [(Monomial::one(n), c)]).unwrap()
    }

    pub fn var(ring: Ring, n: usize, i: usize) -> Self {
        Self::new(ring, n, 1, [(Monomial::var(n, i), K::one())]).unwrap()
    }

    pub fn monomial(ring: Ring, c: K, exps: &[u32]) -> Self {
        let m = Monomial(exps.to_vec());
        let d = m.degree();
        Self::new(ring, exps.len(), d, [(m, c)]).unwrap()
    }

    /// The linear form `sum c_i x_i`.
    pub fn linear(ring: Ring, coeffs: &[K]) -> Self {
        let n = coeffs.len();
        Self::new(ring, n, 1, coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(n, i), c.clone()))).unwrap()
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms, largest monomial first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    /// Same coefficients, read in the other ring.
    pub fn with_ring(&self, ring: Ring) -> Self {
        Poly { ring, ..self.clone() }
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.n, other.n, "variable count mismatch");
        assert!(
            self.degree == other.degree || self.is_zero() || other.is_zero(),
            "adding forms of degrees {} and {}",
            self.degree,
            other.degree
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = if self.is_zero() { other.clone() } else { self.clone() };
        let src = if self.is_zero() { &self.terms } else { &other.terms };
        for (m, c) in src {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn add_term(&mut self, m: &Monomial, c: &K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(v) => {
                v.add_assign_ref(c);
                if v.is_zero() {
                    self.terms.remove(m);
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn neg(&self) -> Self {
        self.map_terms(|c| c.neg_ref())
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring, self.n, self.degree);
        }
        self.map_terms(|a| a.mul_ref(c))
    }

    fn map_terms(&self, f: impl Fn(&K) -> K) -> Self {
        Poly {
            ring: self.ring,
            n: self.n,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f(c))).filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Coefficientwise image in another field.
    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        Poly {
            ring: self.ring,
            n: self.n,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f(c))).filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = Self::zero(self.ring, self.n, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(&a.mul(b), &ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.ring, self.n, K::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `d/dx_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.ring, self.n, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut q = m.clone();
            q.0[i] -= 1;
            out.add_term(&q, &c.mul_ref(&K::from_i64(e as i64)));
        }
        out
    }

    /// Value at a point.
    pub fn eval(&self, point: &[K]) -> K {
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul_ref(&x.pow(e));
                }
            }
            acc.add_assign_ref(&t);
        }
        acc
    }

    /// Coordinates in `monomial_basis(n, degree)`.
    pub fn to_vector(&self) -> Vec<K> {
        let b = Basis::get(self.n, self.degree);
        let mut v = vec![K::zero(); b.len()];
        for (m, c) in &self.terms {
            v[b.index_of(m).expect("homogeneous")] = c.clone();
        }
        v
    }

    pub fn from_vector(ring: Ring, n: usize, degree: usize, v: &[K]) -> Self {
        let b = Basis::get(n, degree);
        assert_eq!(b.len(), v.len(), "vector length");
        Poly {
            ring,
            n,
            degree,
            terms: b.monomials.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Substitute `x_i -> sum_j m[i][j] x'_j`. `m` is `n x n'`; any rank allowed.
    pub fn substitute(&self, m: &Matrix<K>) -> Self {
        assert_eq!(m.nrows(), self.n, "substitution rows");
        let n2 = m.ncols();
        let forms: Vec<Poly<K>> = (0..self.n).map(|i| Poly::linear(self.ring, m.row(i))).collect();
        let mut powers: Vec<Vec<Poly<K>>> = forms.iter().map(|f| vec![Poly::constant(self.ring, n2, K::one()), f.clone()]).collect();
        let mut out = Self::zero(self.ring, n2, self.degree);
        for (mono, c) in &self.terms {
            let mut t = Poly::constant(self.ring, n2, c.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&forms[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            for (mm, cc) in &t.terms {
                out.add_term(mm, cc);
            }
        }
        out.degree = self.degree;
        out
    }

    /// Linear change of coordinates by an invertible square matrix.
    pub fn change_coordinates(&self, m: &LinearMap<K>) -> Result<Self> {
        let mat = m.matrix();
        if !mat.is_square() || mat.nrows() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} map on {} variables",
                mat.nrows(),
                mat.ncols(),
                self.n
            )));
        }
        if mat.determinant().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(self.substitute(mat))
    }

    /// Render with explicit variable names.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms() {
            push_term(&mut out, c, &m.format(names));
        }
        out
    }
}

/// `theta` acting on `f` by differentiation.
pub fn contract<K: Field>(theta: &Poly<K>, f: &Poly<K>) -> Result<Poly<K>> {
    if theta.n != f.n {
        return Err(Error::VariableCountMismatch(theta.n, f.n));
    }
    if theta.ring != Ring::T {
        return Err(Error::RingMismatch("T"));
    }
    if f.ring != Ring::S {
        return Err(Error::RingMismatch("S"));
    }
    if theta.degree > f.degree {
        return Ok(Poly::zero(Ring::S, f.n, 0));
    }
    let mut out = Poly::zero(Ring::S, f.n, f.degree - theta.degree);
    for (a, ca) in &theta.terms {
        for (b, cb) in &f.terms {
            if let Some(q) = a.quotient_of(b) {
                let k = Monomial::derivative_factor(a, b);
                out.add_term(&q, &ca.mul_ref(cb).mul_ref(&K::from_i64(k as i64)));
            }
        }
    }
    Ok(out)
}

/// Default variable names: `x,y,z` / `a,b,c` for up to three variables,
/// otherwise indexed `x1..xn` / `a1..an`.
pub fn default_names(ring: Ring, n: usize) -> Vec<String> {
    let (short, stem) = match ring {
        Ring::S => (["x", "y", "z"], "x"),
        Ring::T => (["a", "b", "c"], "a"),
    };
    if n <= 3 {
        short[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("{stem}{i}")).collect()
    }
}

impl<K: Field> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_names(self.ring, self.n)))
    }
}

/// A linear map on the degree-one piece, stored as an `n_out x n_in` matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearMap<K: Field = Rational> {
    matrix: Matrix<K>,
}

impl<K: Field> LinearMap<K> {
    pub fn new(matrix: Matrix<K>) -> Self {
        LinearMap { matrix }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap { matrix: Matrix::identity(n) }
    }

    pub fn matrix(&self) -> &Matrix<K> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<K> {
        self.matrix
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(LinearMap { matrix: self.matrix.inverse()? })
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        LinearMap { matrix: self.matrix.mul(&other.matrix) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str, n: usize) -> Poly {
        let names = default_names(Ring::S, n);
        parse_poly(text, Ring::S, &names).unwrap()
    }

    fn t(text: &str, n: usize) -> Poly {
        let names = default_names(Ring::T, n);
        parse_poly(text, Ring::T, &names).unwrap()
    }

    #[test]
    fn grevlex_bases() {
        let b = monomial_basis(Ring::S, 2, 2);
        assert_eq!(b, vec![Monomial(vec![2, 0]), Monomial(vec![1, 1]), Monomial(vec![0, 2])]);
        assert_eq!(monomial_basis(Ring::S, 3, 1).len(), 3);
        assert_eq!(monomial_basis(Ring::S, 3, 3).len(), 10);
        let b = monomial_basis(Ring::S, 3, 2);
        assert_eq!(b[3], Monomial(vec![1, 0, 1]));
        assert_eq!(basis_len(5, 7), 330);
    }

    #[test]
    fn contraction_examples() {
        let f = s("x^2*y^3*z^4", 3);
        assert_eq!(contract(&t("a*b^2", 3), &f).unwrap(), s("12*x*y*z^4", 3));
        let g = s("x*y^2", 2);
        assert_eq!(contract(&t("1", 2), &g).unwrap(), g);
        assert!(contract(&t("b^3", 2), &g).unwrap().is_zero());
        assert_eq!(contract(&t("a", 3), &s("x", 2)), Err(Error::VariableCountMismatch(3, 2)));
    }

    #[test]
    fn coordinate_changes() {
        let m = LinearMap::new(Matrix::from_i64(&[&[1, 1], &[1, -1]]));
        assert_eq!(s("x*y", 2).change_coordinates(&m).unwrap(), s("x^2 - y^2", 2));
        let f = s("x^3 - y^3", 2);
        assert_eq!(f.change_coordinates(&LinearMap::identity(2)).unwrap(), f);
        let sing = LinearMap::new(Matrix::from_i64(&[&[1, 1], &[1, 1]]));
        assert_eq!(f.change_coordinates(&sing), Err(Error::SingularMatrix));
        assert_eq!(s("1/4*(x+y)^2 - 1/4*(x-y)^2", 2), s("x*y", 2));
    }

    #[test]
    fn printing() {
        assert_eq!(s("x^2*y - y^2*z", 3).to_string(), "x^2*y - y^2*z");
        assert_eq!(s("-1/3*x^3 + 2*y^3", 2).to_string(), "-1/3*x^3 + 2*y^3");
        assert_eq!(t("a^2 + b*c", 3).to_string(), "a^2 + b*c");
        assert_eq!(s("x1*x4", 4).to_string(), "x1*x4");
    }

    use proptest::prelude::*;

    fn arb_form(n: usize, d: usize) -> impl Strategy<Value = Poly> {
        let len = basis_len(n, d);
        proptest::collection::vec(-3i64..4, len)
            .prop_map(move |v| Poly::from_vector(Ring::S, n, d, &v.into_iter().map(Rational::from).collect::<Vec<_>>()))
    }

    fn arb_op(n: usize, d: usize) -> impl Strategy<Value = Poly> {
        arb_form(n, d).prop_map(|p| p.with_ring(Ring::T))
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-2i64..3, n * n).prop_map(move |v| {
            Matrix::from_rows(n, v.chunks(n).map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect())
        })
    }

    proptest! {
        #[test]
        fn module_action(t1 in arb_op(3, 1), t2 in arb_op(3, 2), f in arb_form(3, 4)) {
            let lhs = contract(&t1.mul(&t2), &f).unwrap();
            let rhs = contract(&t1, &contract(&t2, &f).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert!(contract(&t2.mul(&t2).mul(&t1), &f).unwrap().is_zero());
        }

        #[test]
        fn bilinear(t1 in arb_op(3, 2), t2 in arb_op(3, 2), f in arb_form(3, 3), g in arb_form(3, 3)) {
            let a = contract(&t1.add(&t2), &f.add(&g)).unwrap();
            let b = [&f, &g].iter().flat_map(|h| [&t1, &t2].map(|th| contract(th, h).unwrap()))
                .fold(Poly::zero(Ring::S, 3, 1), |acc, p| acc.add(&p));
            prop_assert_eq!(a, b);
        }

        #[test]
        fn right_action(f in arb_form(3, 3), m1 in arb_matrix(3), m2 in arb_matrix(3)) {
            let lhs = f.substitute(&m1).substitute(&m2);
            prop_assert_eq!(lhs, f.substitute(&m1.mul(&m2)));
        }

        #[test]
        fn print_parse_round_trip(f in arb_form(4, 3)) {
            let names = default_names(Ring::S, 4);
            let text = f.to_string_with(&names);
            let back = parse_poly(&text, Ring::S, &names).unwrap();
            if f.is_zero() {
                prop_assert!(back.is_zero());
            } else {
                prop_assert_eq!(back, f);
            }
        }
    }
}
