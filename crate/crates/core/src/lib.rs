//! Apolar ideals of homogeneous forms over the rationals, direct sum
//! decompositions and their limits.
//!
//! Forms live in `S = Q[x_1..x_n]`; the dual ring `T = Q[a_1..a_n]` acts on
//! `S` by differentiation. The main entry points are [`apolar_profile`] for
//! the Hilbert function and first Betti numbers of `F^perp`, and
//! [`decompose`] for a certificate of direct-sum (in)decomposability.

pub mod error;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod apolarity;
pub mod ideal;
pub mod family;
pub mod dirsum;
pub mod binary;

pub use apolarity::{
    apolar_graded, catalecticant, concise_reduce, derivative_space, is_concise, prolong, prolongation,
    series_apolar_graded, span_of, Catalecticant, ConciseReduction, GradedSubspace,
};
pub use binary::{binary_profile, border_rank_binary, waring_rank_binary, BinaryProfile};
pub use dirsum::{
    decompose, emit_limit_family, random_direct_sum, refine, splitting_space, verify_direct_sum, DecomposeOptions,
    DecompositionCertificate, DirectSum, DirectSumDefect, DirectSumPart, LimitFamily, LimitNormalForm, SplittingSpace,
};
pub use error::{Error, Result};
pub use family::{
    contained_in_limit_apolar, flat_limit_graded, flat_limit_ideal, hilbert_generic, is_apolar_family,
    plane_apolar_family, plane_form, plane_h_oracle, FamilyReport, FlatLimitIdeal, ParamPoly, PlaneFamily,
};
pub use field::{Field, NumberField, NumberFieldElement, Rational, UniPoly};
pub use ideal::{
    apolar_profile, beta1_at, check_degree_bound, check_degree_bound_certified, equipotent_generator_count,
    is_power_of_linear, ApolarProfile, DegreeBoundCheck,
};
pub use linalg::Matrix;
pub use poly::{contract, default_names, default_vars, parse_poly, LinearMap, Monomial, Poly, Ring};
