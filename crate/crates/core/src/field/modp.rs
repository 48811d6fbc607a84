use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Field, Rational};
use crate::error::{Error, Result};

/// The Mersenne prime `2^61 - 1`.
pub(crate) const P: u64 = (1 << 61) - 1;

/// Residue modulo [`P`], used for fast one-sided certificates: ranks can
/// only drop under reduction, so a full rank seen here is a full rank over Q.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct ModP(u64);

impl ModP {
    fn reduce(v: &BigInt) -> u64 {
        let r = v % BigInt::from(P);
        let r = if r < BigInt::from(0) { r + BigInt::from(P) } else { r };
        r.to_u64().expect("residue fits")
    }

    /// Reduction of a rational whose denominator is prime to `P`.
    pub(crate) fn try_from_rational(q: &Rational) -> Option<Self> {
        let den = Self::reduce(q.denom());
        if den == 0 {
            return None;
        }
        Some(ModP(Self::reduce(q.numer())).mul_ref(&ModP(den).inv().ok()?))
    }
}

impl fmt::Display for ModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for ModP {
    fn zero() -> Self {
        ModP(0)
    }

    fn one() -> Self {
        ModP(1)
    }

    /// Panics if the denominator is divisible by `P`.
    fn from_rational(q: &Rational) -> Self {
        Self::try_from_rational(q).expect("denominator divisible by the modulus")
    }

    fn from_i64(v: i64) -> Self {
        let r = v.rem_euclid(P as i64) as u64;
        ModP(r)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn add_ref(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        ModP(if s >= P { s - P } else { s })
    }

    fn sub_ref(&self, other: &Self) -> Self {
        ModP(if self.0 >= other.0 { self.0 - other.0 } else { self.0 + P - other.0 })
    }

    fn mul_ref(&self, other: &Self) -> Self {
        ModP(((self.0 as u128 * other.0 as u128) % P as u128) as u64)
    }

    fn neg_ref(&self) -> Self {
        ModP(if self.0 == 0 { 0 } else { P - self.0 })
    }

    fn inv(&self) -> Result<Self> {
        if self.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_u64(P - 2))
    }

    fn to_rational(&self) -> Option<Rational> {
        None
    }
}

impl ModP {
    fn pow_u64(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = ModP(1);
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_reduction() {
        let x = ModP::try_from_rational(&Rational::new(-3, 7).unwrap()).unwrap();
        assert_eq!(x.mul_ref(&ModP::from_rational(&Rational::from(7))), ModP(P - 3));
        assert!(x.mul_ref(&x.inv().unwrap()) == ModP::one());
        assert!(ModP::try_from_rational(&Rational::new(1, BigInt::from(P)).unwrap()).is_none());
    }
}
