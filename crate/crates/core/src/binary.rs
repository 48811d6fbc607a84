//! Binary forms: the apolar ideal is a complete intersection, whose low
//! generator degree is the border rank.

use crate::apolarity::{apolar_graded, GradedSubspace};
use crate::error::{Error, Result};
use crate::field::{Field, Rational, UniPoly};
use crate::linalg::Matrix;
use crate::poly::{Poly, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct BinaryProfile {
    pub d: usize,
    pub r: usize,
    pub gen_low: Poly,
    pub gen_high: Poly,
}

fn check_binary(f: &Poly) -> Result<()> {
    if f.nvars() != 2 {
        return Err(Error::NotBinary(f.nvars()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(())
}

pub fn binary_profile(f: &Poly) -> Result<BinaryProfile> {
    check_binary(f)?;
    let d = f.degree();
    let (r, low) = (1..=d + 1)
        .map(|k| (k, apolar_graded(f, k)))
        .find_map(|(k, s)| match s {
            Ok(s) if s.dim() > 0 => Some(Ok((k, s))),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .ok_or_else(|| Error::Internal("no apolar generator up to degree d+1".into()))??;
    let gen_low = low.polys().swap_remove(0);
    let e = d + 2 - r;
    let high = apolar_graded(f, e)?;
    let multiples = GradedSubspace::from_polys(
        Ring::T,
        2,
        e,
        &GradedSubspace::<Rational>::full(Ring::T, 2, e - r).polys().iter().map(|m| m.mul(&gen_low)).collect::<Vec<_>>(),
    );
    let gen_high = high
        .polys()
        .into_iter()
        .find(|p| !multiples.contains(p))
        .ok_or_else(|| Error::Internal(format!("no second generator in degree {e}")))?;
    Ok(BinaryProfile { d, r, gen_low, gen_high })
}

pub fn border_rank_binary(f: &Poly) -> Result<usize> {
    Ok(binary_profile(f)?.r)
}

/// Sylvester: the rank is `r` when the low generator has distinct roots
/// (or there is a pencil of them in degree `r`), else `d + 2 - r`.
pub fn waring_rank_binary(f: &Poly) -> Result<usize> {
    let p = binary_profile(f)?;
    let e = p.d + 2 - p.r;
    if p.r == e || is_squarefree_binary(&p.gen_low) {
        Ok(p.r)
    } else {
        Ok(e)
    }
}

/// Distinct roots in P^1 over the algebraic closure: the dehomogenization
/// `g(s, 1)` is squarefree and `beta^2` does not divide `g`.
pub fn is_squarefree_binary(g: &Poly) -> bool {
    let k = g.degree();
    let mut c = vec![Rational::zero(); k + 1];
    for (m, v) in g.terms() {
        c[m.exps()[0] as usize] = v.clone();
    }
    let u = UniPoly::new(c);
    match u.degree() {
        None => false,
        Some(deg) if deg + 1 < k => false,
        Some(_) => u.gcd(&u.derivative()).degree() == Some(0),
    }
}

/// Resultant of two binary forms via the Sylvester matrix; zero iff they
/// share a linear factor.
pub fn binary_resultant(g: &Poly, h: &Poly) -> Result<Rational> {
    if g.nvars() != 2 || h.nvars() != 2 {
        return Err(Error::NotBinary(g.nvars().max(h.nvars())));
    }
    let (a, b) = (g.degree(), h.degree());
    let size = a + b;
    if size == 0 {
        return Ok(Rational::one());
    }
    let (cg, ch) = (g.to_vector(), h.to_vector());
    let mut m = Matrix::<Rational>::zeros(size, size);
    for i in 0..b {
        for (j, v) in cg.iter().enumerate() {
            m.set(i, i + j, v.clone());
        }
    }
    for i in 0..a {
        for (j, v) in ch.iter().enumerate() {
            m.set(b + i, i + j, v.clone());
        }
    }
    Ok(m.determinant())
}

/// Rank of the middle catalecticant, `floor(d/2) + 1` for a general form.
pub fn middle_catalecticant_rank(f: &Poly) -> Result<usize> {
    check_binary(f)?;
    let c = crate::apolarity::catalecticant(f, f.degree() / 2)?;
    Ok(c.matrix.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::apolar_profile;
    use crate::poly::{default_names, parse_poly};

    fn s(text: &str) -> Poly {
        parse_poly(text, Ring::S, &default_names(Ring::S, 2)).unwrap()
    }

    fn t(text: &str) -> Poly {
        parse_poly(text, Ring::T, &default_names(Ring::T, 2)).unwrap()
    }

    #[test]
    fn xy2() {
        let p = binary_profile(&s("x*y^2")).unwrap();
        assert_eq!((p.r, p.gen_low.clone(), p.gen_high.clone()), (2, t("a^2"), t("b^3")));
        assert_eq!(waring_rank_binary(&s("x*y^2")).unwrap(), 3);
    }

    #[test]
    fn fermat_and_powers() {
        for d in 3..=6 {
            let f = s(&format!("x^{d} + y^{d}"));
            let p = binary_profile(&f).unwrap();
            assert_eq!(p.r, 2);
            assert_eq!(p.gen_low, t("a*b"));
            assert_eq!(waring_rank_binary(&f).unwrap(), 2);
            let g = s(&format!("x^{d}"));
            assert_eq!((border_rank_binary(&g).unwrap(), waring_rank_binary(&g).unwrap()), (1, 1));
        }
    }

    #[test]
    fn three_fifth_powers() {
        let f = s("x^5 + y^5 + (x + y)^5");
        assert_eq!(border_rank_binary(&f).unwrap(), 3);
        assert_eq!(waring_rank_binary(&f).unwrap(), 3);
    }

    #[test]
    fn rejects_ternary() {
        let f = parse_poly("x*y*z", Ring::S, &default_names(Ring::S, 3)).unwrap();
        assert_eq!(binary_profile(&f), Err(Error::NotBinary(3)));
    }

    #[test]
    fn squarefree_at_infinity() {
        assert!(is_squarefree_binary(&t("a*b")));
        assert!(!is_squarefree_binary(&t("a*b^2")));
        assert!(!is_squarefree_binary(&t("a^2*b")));
        assert!(is_squarefree_binary(&t("a^2 + b^2")));
        assert!(!is_squarefree_binary(&t("a^2 + 2*a*b + b^2")));
    }

    proptest::proptest! {
        #[test]
        fn complete_intersection(coeffs in proptest::collection::vec(-4i64..=4, 4..=8)) {
            let d = coeffs.len() - 1;
            let v: Vec<Rational> = coeffs.iter().map(|&c| Rational::from(c)).collect();
            let f = Poly::from_vector(Ring::S, 2, d, &v);
            proptest::prop_assume!(!f.is_zero());
            let p = binary_profile(&f).unwrap();
            proptest::prop_assert!(!binary_resultant(&p.gen_low, &p.gen_high).unwrap().is_zero());
            proptest::prop_assert!(2 * p.r <= d + 2);
            let prof = apolar_profile(&f).unwrap();
            let e = d + 2 - p.r;
            for j in 1..=d + 1 {
                let want = usize::from(j == p.r) + usize::from(j == e);
                proptest::prop_assert_eq!(prof.beta(j), want, "j = {}", j);
            }
            let (br, wr) = (p.r, waring_rank_binary(&f).unwrap());
            proptest::prop_assert!(br <= wr);
            proptest::prop_assert_eq!(br == wr, p.r == e || is_squarefree_binary(&p.gen_low));
        }
    }
}
