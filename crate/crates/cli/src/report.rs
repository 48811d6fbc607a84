//! Serializable report types. Polynomials are stored in the input grammar so
//! every report can be parsed back.

use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub input: Input,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<Profile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family_analysis: Option<FamilyAnalysis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub binary: Option<Binary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckRow>,
    pub timing_ms: f64,
}

impl Report {
    pub fn new(command: &str, input: Input) -> Self {
        Report {
            schema: SCHEMA,
            command: command.into(),
            input,
            profile: None,
            certificate: None,
            family: None,
            family_analysis: None,
            binary: None,
            checks: Vec::new(),
            timing_ms: 0.0,
        }
    }

    /// True unless some check row failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Input {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(default)]
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub degree: usize,
    pub nvars: usize,
    pub hilbert: Vec<usize>,
    /// `beta1[j - 1]` counts minimal generators of degree `j`.
    pub beta1: Vec<usize>,
    pub delta: usize,
    /// Minimal generators by degree, in the dual variables.
    pub generators: Vec<GeneratorDegree>,
    pub dual_vars: Vec<String>,
    pub concise: bool,
    pub equipotent_generators: usize,
    pub degree_bound: DegreeBound,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced: Option<Box<Reduced>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorDegree {
    pub degree: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeBound {
    pub coarse: bool,
    pub strengthened: Vec<BoundRow>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub delta: usize,
    pub degrees: Vec<usize>,
    pub bound: usize,
    pub holds: bool,
}

/// A non-concise input in fewer variables, with its own profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reduced {
    pub form: String,
    pub vars: Vec<String>,
    /// Row `k` is the image of the `k`-th new variable.
    pub embedding: Vec<String>,
    pub profile: Profile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    NotConcise {
        reduced: String,
        vars: Vec<String>,
        embedding: Vec<String>,
        inner: Box<Certificate>,
    },
    PowerOfLinearForm {
        linear_form: String,
        scale: String,
    },
    DirectSum {
        parts: Vec<Part>,
        /// Columns of this matrix are the adapted basis of the dual space.
        coordinate_change: Vec<Vec<String>>,
        non_unique: bool,
    },
    LimitNormalForm {
        k: usize,
        basis: Vec<Vec<String>>,
        vars: Vec<String>,
        h: String,
        g: String,
        assembled: String,
    },
    NotLimitOfDirectSums {
        reason: String,
    },
    DecomposableOverExtension {
        modulus: String,
        inner: Box<Certificate>,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::NotConcise { .. } => "NotConcise",
            Certificate::PowerOfLinearForm { .. } => "PowerOfLinearForm",
            Certificate::DirectSum { .. } => "DirectSum",
            Certificate::LimitNormalForm { .. } => "LimitNormalForm",
            Certificate::NotLimitOfDirectSums { .. } => "NotLimitOfDirectSums",
            Certificate::DecomposableOverExtension { .. } => "DecomposableOverExtension",
        }
    }

    pub fn innermost(&self) -> &Certificate {
        match self {
            Certificate::NotConcise { inner, .. } => inner.innermost(),
            c => c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Part {
    /// Linear forms spanning the summand's subspace of the degree-one piece.
    pub subspace: Vec<String>,
    pub summand: String,
}

/// A one-parameter family converging to the input at `t = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Family {
    pub expression: String,
    pub limit_matches_input: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apolar: Option<ApolarFamily>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApolarFamily {
    pub expression: String,
    pub certified_apolar: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub border_rank: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyAnalysis {
    pub h_generic: Vec<usize>,
    pub h_at_0: Vec<usize>,
    pub is_apolar: bool,
    pub jump_degrees: Vec<usize>,
    pub limit: String,
    pub limit_concise: bool,
    pub limit_ideal_generators: Vec<GeneratorDegree>,
    /// `dim` of the flat limit of `(F_t^perp)_k` for `k = 0..=d+1`.
    pub limit_dims: Vec<usize>,
    pub contained_in_limit_apolar: bool,
    pub dual_vars: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Binary {
    pub degree: usize,
    pub r: usize,
    pub gen_low: String,
    pub gen_high: String,
    pub border_rank: usize,
    pub waring_rank: usize,
    pub gen_low_squarefree: bool,
    pub middle_catalecticant_rank: usize,
}

/// One row of a pass/fail matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}
