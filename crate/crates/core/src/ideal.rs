//! Hilbert functions and first Betti numbers of apolar ideals.
//!
//! `beta_{1,j}` is the number of minimal generators of `F^perp` in degree `j`.
//! It is computed without building `T_1 * (F^perp)_{j-1}`: under the apolar
//! pairing that subspace is the annihilator of the prolongation of
//! `T_{d-j+1} -| F`, so `beta_{1,j} = dim Prol(T_{d-j+1} -| F) - h(j)`.

use crate::apolarity::{apolar_graded, catalecticant, derivative_space, prolong, GradedSubspace};
use crate::error::{Error, Result};
use crate::field::modp::ModP;
use crate::field::{Field, Rational};
use crate::linalg::Matrix;
use crate::poly::{basis_len, Basis, Poly, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct ApolarProfile<K: Field = Rational> {
    pub d: usize,
    pub n: usize,
    /// `h(0..=d)`.
    pub hilbert: Vec<usize>,
    /// `beta1[j - 1] = beta_{1,j}` for `j = 1..=d+1`.
    pub beta1: Vec<usize>,
    /// Largest degree of a minimal generator.
    pub delta: usize,
    /// For each `j`, generators of `(F^perp)_j` independent modulo `T_1 * (F^perp)_{j-1}`.
    pub generator_spaces: Vec<GradedSubspace<K>>,
}

impl<K: Field> ApolarProfile<K> {
    pub fn beta(&self, j: usize) -> usize {
        if j == 0 || j > self.beta1.len() {
            0
        } else {
            self.beta1[j - 1]
        }
    }

    /// Generator degrees with multiplicity, ascending.
    pub fn generator_degrees(&self) -> Vec<usize> {
        (1..=self.d + 1).flat_map(|j| std::iter::repeat_n(j, self.beta(j))).collect()
    }

    pub fn total_generators(&self) -> usize {
        self.beta1.iter().sum()
    }
}

/// Apolar pairing of two elements of the same degree: `theta -| g` as a scalar.
fn pairing_weights(n: usize, k: usize) -> Vec<u64> {
    Basis::get(n, k)
        .monomials
        .iter()
        .map(|m| m.exps().iter().map(|&e| (1..=e as u64).product::<u64>()).product())
        .collect()
}

/// Rows of `ideal` that stay independent modulo the annihilator of `prol`.
fn new_generators<K: Field>(ideal: &GradedSubspace<K>, prol: &GradedSubspace<K>) -> GradedSubspace<K> {
    let (n, j) = (ideal.n, ideal.k);
    if prol.dim() == 0 || ideal.dim() == 0 {
        return GradedSubspace::zero(Ring::T, n, j);
    }
    let w = pairing_weights(n, j);
    let weighted: Vec<Vec<K>> = prol
        .basis()
        .rows()
        .iter()
        .map(|g| g.iter().zip(&w).map(|(c, &wt)| if c.is_zero() { K::zero() } else { c.mul_ref(&K::from_i64(wt as i64)) }).collect())
        .collect();
    let gw = Matrix::from_rows(w.len(), weighted).transpose();
    let m = ideal.basis().mul(&gw);
    let picks = m.transpose().rref().pivots;
    GradedSubspace::from_rows(Ring::T, n, j, ideal.basis().select_rows(&picks))
}

pub fn apolar_profile<K: Field>(f: &Poly<K>) -> Result<ApolarProfile<K>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (n, d) = (f.nvars(), f.degree());
    let derivs: Vec<GradedSubspace<K>> = (0..=d).map(|k| derivative_space(f, k)).collect();
    let hilbert: Vec<usize> = derivs.iter().map(|u| u.dim()).collect();
    let mut beta1 = Vec::with_capacity(d + 1);
    let mut generator_spaces = Vec::with_capacity(d + 1);
    for j in 1..=d + 1 {
        let prol = prolong(&derivs[j - 1]);
        let hj = hilbert.get(j).copied().unwrap_or(0);
        let b = prol.dim().checked_sub(hj).ok_or_else(|| Error::Internal(format!("prolongation too small in degree {j}")))?;
        let gens = new_generators(&apolar_graded(f, j)?, &prol);
        if gens.dim() != b {
            return Err(Error::Internal(format!("generator count mismatch in degree {j}: {} vs {b}", gens.dim())));
        }
        beta1.push(b);
        generator_spaces.push(gens);
    }
    let delta = (1..=d + 1).rev().find(|&j| beta1[j - 1] > 0).unwrap_or(0);
    Ok(ApolarProfile { d, n, hilbert, beta1, delta, generator_spaces })
}

/// `beta_{1,j}` alone.
pub fn beta1_at<K: Field>(f: &Poly<K>, j: usize) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.degree();
    if j == 0 || j > d + 1 {
        return Err(Error::DegreeOutOfRange { degree: j, max: d + 1 });
    }
    let prol = prolong(&derivative_space(f, j - 1));
    let hj = if j <= d { derivative_space(f, j).dim() } else { 0 };
    Ok(prol.dim() - hj)
}

/// `beta_{1,d}`, the number of equipotent apolar generators.
pub fn equipotent_generator_count<K: Field>(f: &Poly<K>) -> Result<usize> {
    beta1_at(f, f.degree().max(1))
}

/// True iff `F = l^d`. Both characterizations are computed and compared.
pub fn is_power_of_linear<K: Field>(f: &Poly<K>) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.degree();
    if d == 0 {
        return Ok(true);
    }
    let by_generator = beta1_at(f, d + 1)? > 0;
    let by_rank = catalecticant(f, 1)?.matrix.rank() == 1;
    if by_generator != by_rank {
        return Err(Error::Internal("power-of-linear tests disagree".into()));
    }
    Ok(by_rank)
}

/// One instance of the sum bound: `d <= sum(degrees) - n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundInstance {
    pub delta: usize,
    /// The `n` largest generator degrees not exceeding `delta`.
    pub degrees: Vec<usize>,
    pub bound: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBoundCheck {
    /// `d <= (delta - 1) n`.
    pub coarse: bool,
    pub strengthened: Vec<BoundInstance>,
}

impl DegreeBoundCheck {
    pub fn holds(&self) -> bool {
        self.coarse && self.strengthened.iter().all(|b| b.holds)
    }
}

fn sum_bound(degrees: &[usize], delta: usize, n: usize, d: usize) -> Option<BoundInstance> {
    let below: Vec<usize> = degrees.iter().copied().filter(|&x| x <= delta).collect();
    if below.len() < n {
        return None;
    }
    let top = below[below.len() - n..].to_vec();
    let bound = top.iter().sum::<usize>() - n;
    Some(BoundInstance { delta, degrees: top, bound, holds: d <= bound })
}

/// Both degree bounds with `delta` the largest generator degree, which is
/// always admissible since `F^perp` is primary to the maximal ideal.
pub fn check_degree_bound<K: Field>(profile: &ApolarProfile<K>) -> DegreeBoundCheck {
    let (d, n) = (profile.d, profile.n);
    let coarse = d <= profile.delta.saturating_sub(1) * n;
    let degrees = profile.generator_degrees();
    let strengthened = sum_bound(&degrees, profile.delta, n, d).into_iter().collect();
    DegreeBoundCheck { coarse, strengthened }
}

/// Largest `dim S_k` explored when certifying a smaller `delta`.
const PRIMARY_SEARCH_CAP: usize = 3000;

/// True if the ideal generated by `(F^perp)_{<= delta}` contains a power of
/// the maximal ideal, decided by prolonging `T_{d-delta} -| F` until it
/// vanishes. `None` when the search exceeds the size cap.
pub fn generated_below_is_primary<K: Field>(f: &Poly<K>, delta: usize) -> Option<bool> {
    let (n, d) = (f.nvars(), f.degree());
    if delta > d {
        return Some(true);
    }
    if delta == 0 {
        return Some(false);
    }
    let mut u = derivative_space(f, delta);
    let limit = n * (delta - 1) + 1;
    let mut k = delta;
    while u.dim() > 0 {
        if k >= limit {
            return Some(false);
        }
        if basis_len(n, k + 1) > PRIMARY_SEARCH_CAP {
            return None;
        }
        u = prolong(&u);
        k += 1;
    }
    Some(true)
}

/// The bound check extended with every smaller generator degree `delta`
/// for which primality of `(F^perp)_{<= delta}` could be certified.
pub fn check_degree_bound_certified<K: Field>(f: &Poly<K>, profile: &ApolarProfile<K>) -> DegreeBoundCheck {
    let mut out = check_degree_bound(profile);
    let degrees = profile.generator_degrees();
    let mut cands: Vec<usize> = degrees.iter().copied().filter(|&x| x < profile.delta).collect();
    cands.dedup();
    for delta in cands {
        let Some(b) = sum_bound(&degrees, delta, profile.n, profile.d) else { continue };
        let certified = match primary_mod_p(f, delta) {
            Some(c) => c,
            None => generated_below_is_primary(f, delta) == Some(true),
        };
        if certified {
            out.strengthened.push(b);
        }
    }
    out
}

/// One-sided fast path for [`generated_below_is_primary`]: the exact
/// `T_{d-delta} -| F` is reduced modulo a large prime and prolonged there.
/// Reduction can only enlarge each prolongation, so reaching zero modulo
/// the prime proves it over Q; `Some(false)` only means "not certified".
/// `None` when the coefficients do not reduce (irrational or bad prime).
fn primary_mod_p<K: Field>(f: &Poly<K>, delta: usize) -> Option<bool> {
    let (n, d) = (f.nvars(), f.degree());
    if delta == 0 || delta > d {
        return None;
    }
    let u = derivative_space(f, delta);
    let rows: Option<Vec<Vec<ModP>>> = u
        .basis()
        .rows()
        .iter()
        .map(|r| r.iter().map(|c| c.to_rational().and_then(|q| ModP::try_from_rational(&q))).collect())
        .collect();
    let rows = rows?;
    let cols = u.ambient_dim();
    let mut u = GradedSubspace::from_rows(Ring::S, n, delta, Matrix::from_rows(cols, rows));
    let limit = n * (delta - 1) + 1;
    let mut k = delta;
    while u.dim() > 0 {
        if k >= limit || basis_len(n, k + 1) > PRIMARY_SEARCH_CAP {
            return Some(false);
        }
        u = prolong(&u);
        k += 1;
    }
    Some(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{default_names, parse_poly};

    fn s(text: &str, n: usize) -> Poly {
        parse_poly(text, Ring::S, &default_names(Ring::S, n)).unwrap()
    }

    #[test]
    fn profiles() {
        let p = apolar_profile(&s("x^2*y - y^2*z", 3)).unwrap();
        assert_eq!(p.beta1, vec![0, 3, 2, 0]);
        assert_eq!(p.hilbert, vec![1, 3, 3, 1]);
        assert_eq!(p.delta, 3);
        let p = apolar_profile(&s("x*y*z", 3)).unwrap();
        assert_eq!((p.beta(2), p.beta(3)), (3, 0));
        let p = apolar_profile(&s("x^5", 2)).unwrap();
        assert_eq!((p.beta(1), p.beta(6)), (1, 1));
        assert_eq!(p.generator_spaces[0].dim(), 1);
    }

    #[test]
    fn equipotent_counts() {
        assert_eq!(equipotent_generator_count(&s("x^3 + y^3 + z^3", 3)).unwrap(), 2);
        assert_eq!(equipotent_generator_count(&s("x*y^2", 2)).unwrap(), 1);
    }

    #[test]
    fn powers_of_linear_forms() {
        assert!(is_power_of_linear(&s("(x+2*y)^5", 2)).unwrap());
        assert!(!is_power_of_linear(&s("x*y^2", 2)).unwrap());
        assert!(is_power_of_linear(&s("x^4", 3)).unwrap());
    }

    #[test]
    fn degree_bounds() {
        let f = s("x*y*z", 3);
        let p = apolar_profile(&f).unwrap();
        let c = check_degree_bound(&p);
        assert!(c.coarse && c.holds());
        assert_eq!(c.strengthened[0].bound, 3);
        let p = apolar_profile(&s("x^3 + y^3 + z^3", 3)).unwrap();
        assert!(check_degree_bound(&p).holds());
        let p = apolar_profile(&s("x*y^2", 2)).unwrap();
        let c = check_degree_bound(&p);
        assert_eq!(c.strengthened[0].degrees, vec![2, 3]);
        assert_eq!(c.strengthened[0].bound, 3);
    }

    #[test]
    fn primary_certificates() {
        // Fermat: the quadrics a*b, a*c, b*c do not cut out the empty set
        let f = s("x^3 + y^3 + z^3", 3);
        assert_eq!(generated_below_is_primary(&f, 2), Some(false));
        assert_eq!(generated_below_is_primary(&f, 3), Some(true));
        // xyz: a^2, b^2, c^2 are a complete intersection
        assert_eq!(generated_below_is_primary(&s("x*y*z", 3), 2), Some(true));
    }

    #[test]
    fn modular_certificate_agrees_with_exact() {
        for (text, n, delta) in [("x^3 + y^3 + z^3", 3, 2), ("x*y*z", 3, 2), ("x^2*y^2 + z^4", 3, 2), ("x*y^3 + z^4", 3, 3)] {
            let f = s(text, n);
            assert_eq!(primary_mod_p(&f, delta), generated_below_is_primary(&f, delta), "{text}");
        }
    }
}
