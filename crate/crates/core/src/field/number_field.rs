use std::fmt;
use std::sync::Arc;

use super::unipoly::push_term;
use super::{factor_rational, Field, Rational, UniPoly};
use crate::error::{Error, Result};

type QPoly = UniPoly<Rational>;

/// The simple extension `Q[l]/(f)` for a monic irreducible `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct NumberField {
    modulus: Arc<QPoly>,
}

impl NumberField {
    /// Validates that `f` is monic, of degree at least one and irreducible over Q.
    pub fn new(f: QPoly) -> Result<Self> {
        if f.degree().unwrap_or(0) == 0 || !f.is_monic() {
            return Err(Error::BadModulus);
        }
        let fac = factor_rational(&f);
        if fac.factors.len() != 1 || fac.factors[0].1 != 1 {
            return Err(Error::NotIrreducible);
        }
        Ok(NumberField { modulus: Arc::new(f) })
    }

    pub fn modulus(&self) -> &QPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// The class of `l`.
    pub fn root(&self) -> NumberFieldElement {
        self.element(&QPoly::from_i64(&[0, 1]))
    }

    /// The class of a rational polynomial in `l`.
    pub fn element(&self, p: &QPoly) -> NumberFieldElement {
        let r = p.rem(&self.modulus).expect("nonzero modulus");
        NumberFieldElement { value: r, modulus: Some(self.modulus.clone()) }
    }

    pub fn from_rational(&self, q: &Rational) -> NumberFieldElement {
        self.element(&QPoly::constant(q.clone()))
    }
}

/// Element of a simple extension, or a bare rational when `modulus` is `None`.
///
/// Bare rationals come from the generic constructors (`zero`, `one`,
/// `from_rational`) and combine with elements of any single field.
#[derive(Clone, Debug)]
pub struct NumberFieldElement {
    value: QPoly,
    modulus: Option<Arc<QPoly>>,
}

impl NumberFieldElement {
    /// Coefficients in the power basis `1, l, .., l^{deg f - 1}`.
    pub fn coefficients(&self) -> Vec<Rational> {
        let n = self.modulus.as_ref().map_or(1, |m| m.degree().unwrap());
        (0..n).map(|i| self.value.coeff(i)).collect()
    }

    pub fn modulus(&self) -> Option<&QPoly> {
        self.modulus.as_deref()
    }

    pub fn as_poly(&self) -> &QPoly {
        &self.value
    }

    fn join(&self, other: &Self) -> Option<Arc<QPoly>> {
        match (&self.modulus, &other.modulus) {
            (Some(a), Some(b)) => {
                if !Arc::ptr_eq(a, b) && a != b {
                    panic!("{}", Error::NestedExtension);
                }
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    fn make(value: QPoly, modulus: Option<Arc<QPoly>>) -> Self {
        let value = match &modulus {
            Some(m) if value.degree().unwrap_or(0) >= m.degree().unwrap() => value.rem(m).expect("nonzero"),
            _ => value,
        };
        NumberFieldElement { value, modulus }
    }
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, other: &Self) -> bool {
        if let (Some(a), Some(b)) = (&self.modulus, &other.modulus) {
            if a != b {
                return false;
            }
        }
        self.value == other.value
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, c) in self.value.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "l".to_string(),
                _ => format!("l^{k}"),
            };
            push_term(&mut out, c, &mono);
        }
        f.write_str(&out)
    }
}

impl Field for NumberFieldElement {
    fn zero() -> Self {
        NumberFieldElement { value: QPoly::zero(), modulus: None }
    }

    fn one() -> Self {
        NumberFieldElement { value: QPoly::one(), modulus: None }
    }

    fn from_rational(q: &Rational) -> Self {
        NumberFieldElement { value: QPoly::constant(q.clone()), modulus: None }
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn add_ref(&self, other: &Self) -> Self {
        Self::make(self.value.add(&other.value), self.join(other))
    }

    fn sub_ref(&self, other: &Self) -> Self {
        Self::make(self.value.sub(&other.value), self.join(other))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        Self::make(self.value.mul(&other.value), self.join(other))
    }

    fn neg_ref(&self) -> Self {
        NumberFieldElement { value: self.value.neg(), modulus: self.modulus.clone() }
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.modulus {
            None => Ok(Self::from_rational(&self.value.coeff(0).inv()?)),
            Some(m) => {
                let (g, s, _) = self.value.ext_gcd(m);
                if g.degree() != Some(0) {
                    return Err(Error::NotIrreducible);
                }
                Ok(Self::make(s, Some(m.clone())))
            }
        }
    }

    fn to_rational(&self) -> Option<Rational> {
        match self.value.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.value.coeff(0)),
            _ => None,
        }
    }

    fn is_compound(&self) -> bool {
        self.value.degree().unwrap_or(0) > 0
    }

    fn is_one(&self) -> bool {
        self.value == QPoly::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> NumberField {
        NumberField::new(QPoly::from_i64(&[-2, 0, 1])).unwrap()
    }

    #[test]
    fn inverse_of_root() {
        let k = sqrt2();
        let l = k.root();
        let inv = l.inv().unwrap();
        assert_eq!(inv, k.element(&QPoly::new(vec![Rational::zero(), Rational::new(1, 2).unwrap()])));
        assert!(l.mul_ref(&inv).is_one());
        assert!(NumberFieldElement::zero().inv().is_err());
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert_eq!(NumberField::new(QPoly::from_i64(&[2, -3, 1])), Err(Error::NotIrreducible));
        assert_eq!(NumberField::new(QPoly::from_i64(&[-2, 0, 2])), Err(Error::BadModulus));
    }

    #[test]
    #[should_panic]
    fn mixed_fields_panic() {
        let a = sqrt2().root();
        let b = NumberField::new(QPoly::from_i64(&[-3, 0, 1])).unwrap().root();
        let _ = a.add_ref(&b);
    }

    #[test]
    fn printing() {
        let k = sqrt2();
        let e = k.element(&QPoly::from_i64(&[1, -3]));
        assert_eq!(e.to_string(), "-3*l + 1");
        assert!(e.is_compound());
    }

    /// Multiplication by an element as a matrix on the power basis.
    fn mult_matrix(k: &NumberField, a: &NumberFieldElement) -> Vec<Vec<Rational>> {
        let n = k.degree();
        let mut cols = Vec::new();
        for j in 0..n {
            let basis = k.element(&QPoly::monomial(Rational::one(), j));
            cols.push(a.mul_ref(&basis).coefficients());
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let n = a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                    .collect()
            })
            .collect()
    }

    proptest::proptest! {
        #[test]
        fn agrees_with_companion_matrices(a in proptest::collection::vec(-9i64..9, 3),
                                          b in proptest::collection::vec(-9i64..9, 3)) {
            // x^3 - x - 1 is irreducible; multiplication by l is its companion matrix
            let k = NumberField::new(QPoly::from_i64(&[-1, -1, 0, 1])).unwrap();
            let x = k.element(&QPoly::from_i64(&a));
            let y = k.element(&QPoly::from_i64(&b));
            let prod = mult_matrix(&k, &x.mul_ref(&y));
            proptest::prop_assert_eq!(prod, matmul(&mult_matrix(&k, &x), &mult_matrix(&k, &y)));
            if !y.is_zero() {
                let q = x.div_ref(&y).unwrap();
                proptest::prop_assert_eq!(q.mul_ref(&y), x.clone());
            }
            proptest::prop_assert_eq!(x.add_ref(&y).sub_ref(&y), x);
        }
    }
}
