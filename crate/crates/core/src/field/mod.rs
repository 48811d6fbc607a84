//! Exact coefficient fields.
//!
//! Everything in the toolkit is generic over [`Field`]. Two implementations are
//! provided: [`Rational`] (the default everywhere) and [`NumberFieldElement`],
//! elements of a simple extension `Q[r]/(f)` used when a splitting map has an
//! eigenvalue outside `Q`.

mod factor;
pub(crate) mod modp;
mod number_field;
mod rational;
pub(crate) mod unipoly;

pub use factor::{factor_rational, squarefree_decomposition, Factorization};
pub use number_field::{NumberField, NumberFieldElement};
pub use rational::Rational;
pub use unipoly::UniPoly;

use std::fmt;

use crate::error::Result;

/// An exact field. All operations are total except inversion of zero.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn is_zero(&self) -> bool;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse; `DivisionByZero` for zero.
    fn inv(&self) -> Result<Self>;

    /// The element as a rational number, when it lies in the prime field.
    fn to_rational(&self) -> Option<Rational>;

    /// True if the printed form needs parentheses when used as a coefficient.
    fn is_compound(&self) -> bool {
        false
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from(v))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div_ref(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.sub_ref(&a.mul_ref(b));
    }

    fn add_assign_ref(&mut self, other: &Self) {
        if other.is_zero() {
            return;
        }
        *self = self.add_ref(other);
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }
}
