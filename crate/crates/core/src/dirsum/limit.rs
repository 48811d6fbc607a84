use super::{verify_direct_sum, DirectSum, DirectSumPart, LimitNormalForm};
use crate::apolarity::GradedSubspace;
use crate::error::{Error, Result};
use crate::family::ParamPoly;
use crate::field::{Field, Rational};
use crate::linalg::Matrix;
use crate::poly::{LinearMap, Poly, Ring};

/// The family `(H(y + t x) + t G - H(y)) / t`, in original coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitFamily {
    pub normal_form: LimitNormalForm,
    pub expression: ParamPoly,
}

/// `sum_i x_i dP/dy_i`.
fn shift_derivation(p: &Poly, k: usize) -> Poly {
    let n = p.nvars();
    let mut out = Poly::zero(Ring::S, n, p.degree());
    for i in 0..k {
        out = out.add(&Poly::var(Ring::S, n, i).mul(&p.partial(k + i)));
    }
    out
}

fn check_shape(nf: &LimitNormalForm) -> Result<()> {
    let k = nf.k;
    let n = nf.h.nvars();
    if k == 0 || 2 * k > n || nf.basis.matrix().nrows() != n || !nf.basis.matrix().is_square() {
        return Err(Error::MalformedNormalForm("inconsistent dimensions".into()));
    }
    if nf.h.is_zero() {
        return Err(Error::MalformedNormalForm("H is zero".into()));
    }
    let in_y = nf.h.terms().all(|(m, _)| m.exps().iter().enumerate().all(|(i, &e)| e == 0 || (k..2 * k).contains(&i)));
    let in_yz = nf.g.terms().all(|(m, _)| m.exps()[..k].iter().all(|&e| e == 0));
    if !in_y || !in_yz {
        return Err(Error::MalformedNormalForm("H or G uses the wrong variables".into()));
    }
    Ok(())
}

pub fn emit_limit_family(nf: &LimitNormalForm) -> Result<LimitFamily> {
    check_shape(nf)?;
    let (n, d, k) = (nf.h.nvars(), nf.h.degree(), nf.k);
    // H(y + t x) = sum_m t^m D^m H / m!, D = sum x_i d/dy_i; the m = 0 term cancels
    let mut parts = vec![nf.g.clone()];
    let mut cur = nf.h.clone();
    let mut fact = Rational::one();
    for m in 1..=d {
        cur = shift_derivation(&cur, k);
        if cur.is_zero() {
            break;
        }
        fact = fact.mul_ref(&Rational::from(m as i64));
        let term = cur.scale(&fact.inv()?);
        if m == 1 {
            parts[0] = parts[0].add(&term);
        } else {
            parts.push(term);
        }
    }
    let local = ParamPoly::from_t_powers(n, d, &parts);
    let binv = nf.basis.inverse()?.into_matrix();
    Ok(LimitFamily { normal_form: nf.clone(), expression: local.substitute(&binv) })
}

impl LimitFamily {
    /// The form at `t = 0`.
    pub fn limit(&self) -> Poly {
        self.expression.limit()
    }

    /// The direct sum `H(y + t x)/t + (G - H(y)/t)` over
    /// `<y_i + t x_i> + <y, z>` at a nonzero `t`.
    pub fn direct_sum_at(&self, t0: &Rational) -> Result<DirectSum> {
        let nf = &self.normal_form;
        let (n, k) = (nf.h.nvars(), nf.k);
        let tinv = t0.inv()?;
        let mut shift = Matrix::<Rational>::identity(n);
        for i in 0..k {
            shift.set(k + i, i, t0.clone());
        }
        let first = nf.h.substitute(&shift).scale(&tinv);
        let second = nf.g.sub(&nf.h.scale(&tinv));
        let binv = nf.basis.inverse()?.into_matrix();
        let mut rows1 = Vec::new();
        for i in 0..k {
            let mut v = vec![Rational::zero(); n];
            v[k + i] = Rational::one();
            v[i] = t0.clone();
            rows1.push(v);
        }
        let rows2: Vec<Vec<Rational>> = (k..n)
            .map(|j| {
                let mut v = vec![Rational::zero(); n];
                v[j] = Rational::one();
                v
            })
            .collect();
        let to_old = |rows: Vec<Vec<Rational>>| Matrix::from_rows(n, rows).mul(&binv);
        let (s1, s2) = (to_old(rows1), to_old(rows2));
        let b = s1.vstack(&s2).inverse()?;
        let ds = DirectSum {
            parts: vec![
                DirectSumPart { subspace: GradedSubspace::from_rows(Ring::S, n, 1, s1), summand: first.substitute(&binv) },
                DirectSumPart { subspace: GradedSubspace::from_rows(Ring::S, n, 1, s2), summand: second.substitute(&binv) },
            ],
            coordinate_change: LinearMap::new(b),
            non_unique: false,
        };
        let f = self.expression.specialize(t0);
        verify_direct_sum(&f, &ds).map_err(|e| Error::Internal(format!("family member is not a direct sum: {e:?}")))?;
        Ok(ds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirsum::{decompose, DecomposeOptions, DecompositionCertificate};
    use crate::poly::{default_names, parse_poly};

    fn s(text: &str, n: usize) -> Poly {
        parse_poly(text, Ring::S, &default_names(Ring::S, n)).unwrap()
    }

    fn family_of(text: &str, n: usize) -> LimitFamily {
        match decompose(&s(text, n), &DecomposeOptions::default()).unwrap() {
            DecompositionCertificate::LimitNormalForm(nf) => emit_limit_family(&nf).unwrap(),
            c => panic!("unexpected {c:?}"),
        }
    }

    #[test]
    fn xy2_family() {
        let fam = family_of("x*y^2", 2);
        let names = default_names(Ring::S, 2);
        let want = ParamPoly::parse("1/(3*t)*((y+t*x)^3 - y^3)", &names);
        // the parser has no division by t; compare against the expanded form
        assert!(want.is_err());
        let want = ParamPoly::parse("x*y^2 + t*x^2*y + 1/3*t^2*x^3", &names).unwrap();
        assert_eq!(fam.expression, want);
        assert_eq!(fam.limit(), s("x*y^2", 2));
        for t0 in [1, -1, 3] {
            fam.direct_sum_at(&Rational::from(t0)).unwrap();
        }
    }

    #[test]
    fn power_family() {
        let nf = LimitNormalForm {
            k: 1,
            basis: LinearMap::identity(2),
            h: s("y^5", 2),
            g: Poly::zero(Ring::S, 2, 5),
        };
        let fam = emit_limit_family(&nf).unwrap();
        assert_eq!(fam.limit(), s("5*x*y^4", 2));
        assert!(fam.direct_sum_at(&Rational::zero()).is_err());
    }

    #[test]
    fn malformed() {
        let nf = LimitNormalForm { k: 1, basis: LinearMap::identity(2), h: s("x*y^2", 2), g: Poly::zero(Ring::S, 2, 3) };
        assert!(matches!(emit_limit_family(&nf), Err(Error::MalformedNormalForm(_))));
    }
}
