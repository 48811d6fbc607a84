//! Plane forms `x y^{d-1} + G(y, z)` with an equipotent apolar generator,
//! presented as apolar limits of direct sums.

use super::{is_apolar_family, ParamPoly};
use crate::apolarity::{apolar_graded, derivative_space};
use crate::binary::binary_profile;
use crate::dirsum::{decompose, emit_limit_family, DecomposeOptions, DecompositionCertificate, LimitNormalForm};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::Matrix;
use crate::poly::{contract, Monomial, Poly, Ring};

/// `G(y, z) -> G` as a form in `x, y, z`.
fn embed_yz(g: &Poly) -> Poly {
    g.substitute(&Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1]]))
}

fn check_binary(g: &Poly) -> Result<()> {
    if g.nvars() != 2 {
        return Err(Error::VariableCountMismatch(g.nvars(), 2));
    }
    Ok(())
}

/// `x y^{d-1} + G(y, z)` for a binary form `G(y, z)` of degree `d`.
pub fn plane_form(g: &Poly) -> Result<Poly> {
    check_binary(g)?;
    let d = g.degree();
    if d < 1 {
        return Err(Error::DegreeOutOfRange { degree: d, max: 1 });
    }
    let lead = Poly::monomial(Ring::S, Rational::one(), &[1, d as u32 - 1, 0]);
    Ok(lead.add(&embed_yz(g)))
}

/// Hilbert value `h(k)` of `x y^{d-1} + G` predicted from `gamma^2 -| G`.
pub fn plane_h_oracle(g: &Poly, k: usize) -> Result<usize> {
    check_binary(g)?;
    let d = g.degree();
    if k < 1 || k + 1 > d {
        return Err(Error::DegreeOutOfRange { degree: k, max: d.saturating_sub(1) });
    }
    let h2 = contract(&Poly::monomial(Ring::T, Rational::one(), &[0, 2]), g)?;
    Ok(derivative_space(&h2, k - 1).dim() + 2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlaneFamily {
    /// Converges to the input at `t = 0`; a direct sum for general `t`.
    pub family: ParamPoly,
    /// True when the generic Hilbert function equals that of the input.
    pub certified_apolar: bool,
    /// Border rank of `gamma^2 -| G` in the normal form, when one was built.
    pub border_rank: Option<usize>,
}

/// Perturbations `E` for which `G + t E - y^d / t` has an apolar form
/// `theta_0 + t theta_1` of degree `r + 1` with `theta_0 = gamma psi`:
/// first solve `gamma psi -| G = theta_1 -| y^d` for `(psi, theta_1)`, then
/// `theta_1 -| G + theta_0 -| E = 0` and `theta_1 -| E = 0` for `E`.
fn annihilator_perturbations(g2: &Poly, r: usize) -> Result<Vec<Poly>> {
    let d = g2.degree();
    let one = Rational::one();
    let gamma = Poly::monomial(Ring::T, one.clone(), &[0, 1]);
    let yd = Poly::monomial(Ring::S, one.clone(), &[d as u32, 0]);
    let psis = crate::apolarity::GradedSubspace::<Rational>::full(Ring::T, 2, r).polys();
    let thetas = crate::apolarity::GradedSubspace::<Rational>::full(Ring::T, 2, r + 1).polys();
    let len = d - r;
    let mut cols = Vec::new();
    for p in &psis {
        cols.push(contract(&gamma.mul(p), g2)?.to_vector());
    }
    for th in &thetas {
        cols.push(contract(th, &yd)?.neg().to_vector());
    }
    let sols = Matrix::from_columns(len, &cols).kernel();
    let mut cands: Vec<Vec<Rational>> = sols.rows().to_vec();
    if cands.len() > 1 {
        cands.push(sols.rows().iter().skip(1).fold(sols.row(0).to_vec(), |acc, r| {
            acc.iter().zip(r).map(|(a, b)| a.add_ref(b)).collect()
        }));
    }
    let monos = crate::apolarity::GradedSubspace::<Rational>::full(Ring::S, 2, d).polys();
    let mut out = Vec::new();
    for c in cands {
        let psi = psis.iter().zip(&c).fold(Poly::zero(Ring::T, 2, r), |s, (p, x)| s.add(&p.scale(x)));
        if psi.is_zero() {
            continue;
        }
        let th0 = gamma.mul(&psi);
        let th1 = thetas.iter().zip(&c[psis.len()..]).fold(Poly::zero(Ring::T, 2, r + 1), |s, (p, x)| s.add(&p.scale(x)));
        let mut ecols = Vec::new();
        for m in &monos {
            let mut v = contract(&th0, m)?.to_vector();
            v.extend(contract(&th1, m)?.to_vector());
            ecols.push(v);
        }
        let mut rhs = contract(&th1, g2)?.neg().to_vector();
        rhs.extend(vec![Rational::zero(); len]);
        if let Some(e) = Matrix::from_columns(2 * len, &ecols).solve(&rhs) {
            out.push(Poly::from_vector(Ring::S, 2, d, &e));
        }
    }
    Ok(out)
}

/// `(1/t)((y + t x'/d)^d - y^d) + G0 + t E` with `x' = x + a z + b y`.
fn build(d: usize, ab: (&Rational, &Rational), g0: &Poly, e: &Poly) -> ParamPoly {
    let xp = Poly::linear(Ring::S, &[Rational::one(), ab.1.clone(), ab.0.clone()]);
    let y = Poly::var(Ring::S, 3, 1);
    let dq = Rational::from(d as i64);
    let mut parts = Vec::new();
    let mut binom = Rational::one();
    for m in 1..=d {
        binom = binom.mul_ref(&Rational::from((d + 1 - m) as i64)).div_ref(&Rational::from(m as i64)).unwrap();
        let c = binom.div_ref(&dq.pow(m as u32)).unwrap();
        parts.push(xp.pow(m as u32).mul(&y.pow((d - m) as u32)).scale(&c));
    }
    parts[0] = parts[0].add(g0);
    if parts.len() > 1 {
        parts[1] = parts[1].add(e);
    } else {
        parts.push(e.clone());
    }
    ParamPoly::from_t_powers(3, d, &parts)
}

/// Solve `theta -| (G - a y^{d-1} z - b y^d) = 0` for `(a, b)`.
fn absorb(theta: &Poly, g2: &Poly) -> Result<Option<(Rational, Rational)>> {
    let d = g2.degree() as u32;
    let u = contract(theta, g2)?.to_vector();
    let v1 = contract(theta, &Poly::monomial(Ring::S, Rational::one(), &[d - 1, 1]))?.to_vector();
    let v2 = contract(theta, &Poly::monomial(Ring::S, Rational::one(), &[d, 0]))?.to_vector();
    let m = Matrix::from_columns(u.len(), &[v1, v2]);
    Ok(m.solve(&u).map(|s| (s[0].clone(), s[1].clone())))
}

fn from_normal_form(f: &Poly, nf: &LimitNormalForm) -> Result<Option<PlaneFamily>> {
    let d = f.degree();
    let b = nf.basis.matrix();
    let lead = Monomial(vec![1, d as u32 - 1, 0]);
    let c = f.substitute(b).coeff(&lead);
    if c.is_zero() {
        return Err(Error::MalformedNormalForm("no x y^(d-1) term".into()));
    }
    let mut scale = Matrix::<Rational>::identity(3);
    scale.set(0, 0, c.inv()?);
    let bd = b.mul(&scale);
    let p = f.substitute(&bd);
    let g = p.sub(&Poly::monomial(Ring::S, Rational::one(), &[1, d as u32 - 1, 0]));
    if g.terms().any(|(m, _)| m.exps()[0] > 0) {
        return Err(Error::MalformedNormalForm("G depends on x".into()));
    }
    let g2 = g.substitute(&Matrix::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]));
    let h2 = contract(&Poly::monomial(Ring::T, Rational::one(), &[0, 2]), &g2)?;
    let back = bd.inverse()?;
    let (r, thetas) = if h2.is_zero() {
        (0, vec![Poly::constant(Ring::T, 2, Rational::one())])
    } else {
        let r = binary_profile(&h2)?.r;
        let low = apolar_graded(&h2, r)?.polys();
        let mut thetas = low.clone();
        if low.len() > 1 {
            thetas.push(low.iter().skip(1).fold(low[0].clone(), |s, p| s.add(p)));
        }
        (r, thetas)
    };
    let zero = Rational::zero();
    let no_e = Poly::zero(Ring::S, 3, d);
    let mut attempts: Vec<(Rational, Rational, Poly)> = Vec::new();
    for th in &thetas {
        if let Some((a, bb)) = absorb(th, &g2)? {
            attempts.push((a, bb, no_e.clone()));
        }
    }
    for e in annihilator_perturbations(&g2, r)? {
        attempts.push((zero.clone(), zero.clone(), embed_yz(&e)));
    }
    for (a, bb, e) in &attempts {
        let g0 = g
            .sub(&Poly::monomial(Ring::S, a.clone(), &[0, d as u32 - 1, 1]))
            .sub(&Poly::monomial(Ring::S, bb.clone(), &[0, d as u32, 0]));
        let fam = build(d, (a, bb), &g0, e).substitute(&back);
        if fam.limit() != *f {
            return Err(Error::Internal("plane family does not converge to the input".into()));
        }
        if is_apolar_family(&fam)?.is_apolar {
            return Ok(Some(PlaneFamily { family: fam, certified_apolar: true, border_rank: Some(r) }));
        }
    }
    let fam = emit_limit_family(nf)?.expression;
    let certified = is_apolar_family(&fam)?.is_apolar;
    Ok(Some(PlaneFamily { family: fam, certified_apolar: certified, border_rank: Some(r) }))
}

/// A family of direct sums converging to a concise ternary form with an
/// equipotent apolar generator, preferring one along which the Hilbert
/// function is constant. `None` when the form has no equipotent generator.
pub fn plane_apolar_family(f: &Poly, opts: &DecomposeOptions) -> Result<Option<PlaneFamily>> {
    if f.nvars() != 3 {
        return Err(Error::VariableCountMismatch(f.nvars(), 3));
    }
    match decompose(f, opts)? {
        DecompositionCertificate::DirectSum(_) | DecompositionCertificate::DecomposableOverExtension { .. } => {
            Ok(Some(PlaneFamily { family: ParamPoly::from_poly(f), certified_apolar: true, border_rank: None }))
        }
        DecompositionCertificate::LimitNormalForm(nf) => from_normal_form(f, &nf),
        DecompositionCertificate::NotLimitOfDirectSums { .. } => Ok(None),
        DecompositionCertificate::NotConcise { .. } | DecompositionCertificate::PowerOfLinearForm { .. } => {
            Err(Error::NotConciseInput)
        }
    }
}

/// Hilbert function `h^r` of the plane stratum.
pub fn plane_stratum_hilbert(d: usize, r: usize) -> Vec<usize> {
    (0..=d)
        .map(|k| match k {
            0 => 1,
            k if k == d => 1,
            k => (k + 2).min(r + 2).min(d - k + 2),
        })
        .collect()
}
