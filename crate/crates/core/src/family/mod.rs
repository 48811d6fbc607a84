//! One-parameter families of forms and their apolar ideals near `t = 0`.

mod param;
mod plane;
mod tmatrix;

pub use param::ParamPoly;
pub use plane::{plane_apolar_family, plane_form, plane_h_oracle, plane_stratum_hilbert, PlaneFamily};

use crate::apolarity::{apolar_graded, catalecticant, GradedSubspace};
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::poly::{Poly, Ring};
use tmatrix::{QPoly, TMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub h_generic: Vec<usize>,
    pub h_at_0: Vec<usize>,
    pub is_apolar: bool,
    pub jump_degrees: Vec<usize>,
}

/// Matrix of `T_k -> S_{d-k}` with entries in `Q[t]`.
fn param_catalecticant(f: &ParamPoly, k: usize) -> TMatrix {
    let d = f.degree();
    let mut out: Option<TMatrix> = None;
    for p in 0..=f.t_degree() {
        let c = catalecticant(&f.t_coefficient(p), d - k).expect("k <= d").matrix;
        let acc = out.get_or_insert_with(|| vec![vec![QPoly::zero(); c.ncols()]; c.nrows()]);
        for (i, row) in c.rows().iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !crate::field::Field::is_zero(v) {
                    acc[i][j] = acc[i][j].add(&QPoly::monomial(v.clone(), p));
                }
            }
        }
    }
    out.unwrap_or_default()
}

/// Hilbert function of `A_F`, read off catalecticant ranks.
pub fn hilbert_of(f: &Poly) -> Vec<usize> {
    (0..=f.degree()).map(|i| catalecticant(f, i).map_or(0, |c| c.matrix.rank())).collect()
}

/// Hilbert function of `A_{F_t}` over `Q(t)`.
pub fn hilbert_generic(f: &ParamPoly) -> Result<Vec<usize>> {
    if f.is_zero() {
        return Err(Error::ZeroFamily);
    }
    Ok((0..=f.degree()).map(|k| tmatrix::rank(param_catalecticant(f, k))).collect())
}

/// Compares the generic Hilbert function with the one at `t = 0`.
pub fn is_apolar_family(f: &ParamPoly) -> Result<FamilyReport> {
    let f0 = f.limit();
    if f0.is_zero() {
        return Err(Error::ZeroAtOrigin);
    }
    let h_generic = hilbert_generic(f)?;
    let h_at_0 = hilbert_of(&f0);
    let jump_degrees: Vec<usize> = (0..h_generic.len()).filter(|&k| h_generic[k] != h_at_0[k]).collect();
    Ok(FamilyReport { is_apolar: jump_degrees.is_empty(), h_generic, h_at_0, jump_degrees })
}

/// `lim_{t -> 0} (F_t^perp)_k` in the Grassmannian of `T_k`.
pub fn flat_limit_graded(f: &ParamPoly, k: usize) -> Result<GradedSubspace> {
    let (n, d) = (f.nvars(), f.degree());
    if k > d + 1 {
        return Err(Error::DegreeOutOfRange { degree: k, max: d + 1 });
    }
    if f.is_zero() {
        return Err(Error::ZeroFamily);
    }
    if k == d + 1 {
        return Ok(GradedSubspace::full(Ring::T, n, k));
    }
    let c = param_catalecticant(f, k);
    let rows = c.len();
    let cols = c.first().map_or(0, Vec::len);
    let ker = tmatrix::kernel(tmatrix::transpose(&c, cols), rows);
    if ker.is_empty() {
        return Ok(GradedSubspace::zero(Ring::T, n, k));
    }
    let lim = tmatrix::saturate_at_zero(ker, rows)?;
    Ok(GradedSubspace::from_rows(Ring::T, n, k, lim))
}

/// The flat limit ideal `J = lim F_t^perp`, in degrees `0..=d+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatLimitIdeal {
    pub pieces: Vec<GradedSubspace>,
}

impl FlatLimitIdeal {
    /// A minimal generating set, degree by degree; each degree's new
    /// generators are RREF rows of `J_j` outside `T_1 J_{j-1}`.
    pub fn generators(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        for j in 1..self.pieces.len() {
            let piece = &self.pieces[j];
            let n = piece.n;
            let prev = &self.pieces[j - 1];
            let products: Vec<Poly> = prev
                .polys()
                .iter()
                .flat_map(|p| (0..n).map(move |i| p.mul(&Poly::var(Ring::T, n, i))))
                .collect();
            let mut span = GradedSubspace::from_polys(Ring::T, n, j, &products);
            for p in piece.polys() {
                if !span.contains(&p) {
                    span = span.sum(&GradedSubspace::from_polys(Ring::T, n, j, std::slice::from_ref(&p)));
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn beta1(&self, j: usize) -> usize {
        self.generators().iter().filter(|g| g.degree() == j).count()
    }
}

pub fn flat_limit_ideal(f: &ParamPoly) -> Result<FlatLimitIdeal> {
    Ok(FlatLimitIdeal { pieces: (0..=f.degree() + 1).map(|k| flat_limit_graded(f, k)).collect::<Result<_>>()? })
}

/// Checks `J_k` is contained in `(F_0^perp)_k` for every `k <= d + 1`.
pub fn contained_in_limit_apolar(f: &ParamPoly) -> Result<bool> {
    let f0 = f.limit();
    if f0.is_zero() {
        return Err(Error::ZeroAtOrigin);
    }
    for k in 0..=f.degree() + 1 {
        if !flat_limit_graded(f, k)?.is_subspace_of(&apolar_graded(&f0, k)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Specialization at a rational value of `t`.
pub fn specialize(f: &ParamPoly, t0: &Rational) -> Poly {
    f.specialize(t0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{default_names, parse_poly};

    fn fam(text: &str, n: usize) -> ParamPoly {
        ParamPoly::parse(text, &default_names(Ring::S, n)).unwrap()
    }

    fn t(text: &str) -> Poly {
        parse_poly(text, Ring::T, &default_names(Ring::T, 2)).unwrap()
    }

    #[test]
    fn generic_hilbert() {
        assert_eq!(hilbert_generic(&fam("x^3 + y^3 + z^3 + t*(x + y + z)^3", 3)).unwrap(), vec![1, 3, 3, 1]);
        assert_eq!(hilbert_generic(&fam("t*x^4 + x*y^3", 2)).unwrap(), vec![1, 2, 3, 2, 1]);
        assert_eq!(hilbert_generic(&fam("x*y^2", 2)).unwrap(), vec![1, 2, 2, 1]);
        assert_eq!(hilbert_generic(&ParamPoly::zero(2, 3)), Err(Error::ZeroFamily));
    }

    #[test]
    fn apolarity_of_families() {
        let r = is_apolar_family(&fam("t*x^4 + x*y^3", 2)).unwrap();
        assert!(!r.is_apolar);
        assert_eq!(r.h_at_0, vec![1, 2, 2, 2, 1]);
        assert_eq!(r.jump_degrees, vec![2]);
        let r = is_apolar_family(&fam("t*x^5 + x*y^4", 2)).unwrap();
        assert!(!r.is_apolar);
        assert_eq!(r.jump_degrees, vec![2, 3]);
        assert!(is_apolar_family(&fam("x^3 + y^3 + z^3 + t*(x + y + z)^3", 3)).unwrap().is_apolar);
        let r = is_apolar_family(&fam("x^4 + t*y^4", 2)).unwrap();
        assert!(!r.is_apolar);
        assert_eq!(is_apolar_family(&fam("t*x^3", 2)), Err(Error::ZeroAtOrigin));
    }

    #[test]
    fn flat_limit_of_xy_family() {
        for d in 4..=5 {
            let f = fam(&format!("t*x^{d} + x*y^{}", d - 1), 2);
            let j = flat_limit_ideal(&f).unwrap();
            let want = [t("a^2*b"), t(&format!("a^{}", d - 1)), t(&format!("b^{d}"))];
            for k in 0..=d + 1 {
                let gen: Vec<Poly> = want
                    .iter()
                    .filter(|g| g.degree() <= k)
                    .flat_map(|g| {
                        GradedSubspace::<Rational>::full(Ring::T, 2, k - g.degree()).polys().into_iter().map(move |m| m.mul(g))
                    })
                    .collect();
                let ideal_k = GradedSubspace::from_polys(Ring::T, 2, k, &gen);
                assert_eq!(j.pieces[k], ideal_k, "d = {d}, k = {k}");
            }
            assert_eq!(j.generators().len(), 3);
            assert!(contained_in_limit_apolar(&f).unwrap());
            // strict in degree 2 (alpha^2); degree d agrees since h(d) = 1 on both sides
            let f0 = f.limit();
            assert!(j.pieces[2].dim() < apolar_graded(&f0, 2).unwrap().dim());
            assert_eq!(j.pieces[d], apolar_graded(&f0, d).unwrap());
        }
    }

    #[test]
    fn constant_family_limit_is_itself() {
        let f = fam("x^2*y - y^2*z", 3);
        let f0 = f.limit();
        for k in 0..=4 {
            assert_eq!(flat_limit_graded(&f, k).unwrap(), apolar_graded(&f0, k).unwrap());
        }
        assert!(flat_limit_graded(&f, 5).is_err());
    }

    #[test]
    fn limit_dimension_is_generic_dimension() {
        let f = fam("x^3 + t*y^3 + t^2*x*y*z + z^3 - t*x^2*z", 3);
        let h = hilbert_generic(&f).unwrap();
        for k in 0..=3 {
            let full = crate::poly::basis_len(3, k);
            assert_eq!(flat_limit_graded(&f, k).unwrap().dim(), full - h[k]);
        }
    }
}
