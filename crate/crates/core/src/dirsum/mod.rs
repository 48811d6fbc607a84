//! Direct-sum decomposition of forms.
//!
//! A splitting map is an endomorphism `L` of `T_1` with every
//! `a_i L(a_j) - a_j L(a_i)` in `F^perp`. For concise `F` the space of such
//! maps contains the scalars; a non-scalar member either splits `T_1` into
//! generalized eigenspaces (a direct sum) or is nilpotent up to a scalar,
//! which yields the normal form `sum x_i dH/dy_i + G(y, z)`.

mod decompose;
mod limit;
mod random;
mod refine;
mod splitting;

pub use decompose::{decompose, DecomposeOptions};
pub use limit::{emit_limit_family, LimitFamily};
pub use random::random_direct_sum;
pub use refine::refine;
pub use splitting::{minimal_polynomial, splitting_space, SplittingSpace};

use crate::apolarity::{span_of, ConciseReduction, GradedSubspace};
use crate::field::{Field, NumberFieldElement, Rational, UniPoly};
use crate::poly::{LinearMap, Poly};

#[derive(Clone, Debug, PartialEq)]
pub struct DirectSumPart<K: Field = Rational> {
    /// Subspace of `S_1` the summand lives in.
    pub subspace: GradedSubspace<K>,
    pub summand: Poly<K>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DirectSum<K: Field = Rational> {
    pub parts: Vec<DirectSumPart<K>>,
    /// Columns are a basis of `T_1` adapted to the parts, in part order.
    pub coordinate_change: LinearMap<K>,
    /// Set for quadrics, which split along many different bases.
    pub non_unique: bool,
}

/// `change_coordinates(F, basis) = sum x_i dH/dy_i + G` with new variables
/// ordered `x_1..x_k, y_1..y_k, z_1..z_{n-2k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitNormalForm<K: Field = Rational> {
    pub k: usize,
    pub basis: LinearMap<K>,
    /// Form in the `y` variables (of the new coordinates).
    pub h: Poly<K>,
    /// Form in the `y, z` variables.
    pub g: Poly<K>,
}

impl<K: Field> LimitNormalForm<K> {
    /// `sum x_i dH/dy_i + G` in the new coordinates.
    pub fn assembled(&self) -> Poly<K> {
        let n = self.h.nvars();
        let mut out = self.g.clone();
        for i in 0..self.k {
            let xi = Poly::var(crate::poly::Ring::S, n, i);
            out = out.add(&xi.mul(&self.h.partial(self.k + i)));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DecompositionCertificate<K: Field = Rational> {
    NotConcise { reduction: ConciseReduction<K>, inner: Box<DecompositionCertificate<K>> },
    /// `F = scale * ell^d`.
    PowerOfLinearForm { ell: Poly<K>, scale: K },
    DirectSum(DirectSum<K>),
    LimitNormalForm(LimitNormalForm<K>),
    NotLimitOfDirectSums { reason: String },
    /// A splitting over `Q[l]/(modulus)`; `inner` is a direct sum over that field.
    DecomposableOverExtension { modulus: UniPoly<Rational>, inner: Box<DecompositionCertificate<NumberFieldElement>> },
}

impl<K: Field> DecompositionCertificate<K> {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::NotConcise { .. } => "NotConcise",
            Self::PowerOfLinearForm { .. } => "PowerOfLinearForm",
            Self::DirectSum(_) => "DirectSum",
            Self::LimitNormalForm(_) => "LimitNormalForm",
            Self::NotLimitOfDirectSums { .. } => "NotLimitOfDirectSums",
            Self::DecomposableOverExtension { .. } => "DecomposableOverExtension",
        }
    }

    /// The certificate below any `NotConcise` wrappers.
    pub fn innermost(&self) -> &Self {
        match self {
            Self::NotConcise { inner, .. } => inner.innermost(),
            c => c,
        }
    }
}

/// Why a direct-sum certificate is invalid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirectSumDefect {
    TooFewParts,
    ZeroSummand,
    NotIndependent,
    NotSpanning,
    SummandOutsideSubspace,
    SumMismatch,
}

/// Check a direct-sum certificate against `f`.
pub fn verify_direct_sum<K: Field>(f: &Poly<K>, ds: &DirectSum<K>) -> Result<(), DirectSumDefect> {
    if ds.parts.len() < 2 {
        return Err(DirectSumDefect::TooFewParts);
    }
    if ds.parts.iter().any(|p| p.summand.is_zero()) {
        return Err(DirectSumDefect::ZeroSummand);
    }
    let n = f.nvars();
    let mut total = GradedSubspace::zero(crate::poly::Ring::S, n, 1);
    let mut dims = 0;
    for p in &ds.parts {
        total = total.sum(&p.subspace);
        dims += p.subspace.dim();
    }
    if total.dim() != dims {
        return Err(DirectSumDefect::NotIndependent);
    }
    if dims != n {
        return Err(DirectSumDefect::NotSpanning);
    }
    for p in &ds.parts {
        match span_of(&p.summand) {
            Ok(s) if s.is_subspace_of(&p.subspace) => {}
            _ => return Err(DirectSumDefect::SummandOutsideSubspace),
        }
    }
    let mut sum = Poly::zero(crate::poly::Ring::S, n, f.degree());
    for p in &ds.parts {
        sum = sum.add(&p.summand);
    }
    if &sum != f {
        return Err(DirectSumDefect::SumMismatch);
    }
    Ok(())
}
