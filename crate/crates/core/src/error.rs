use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Input errors (parse failures, bad degrees, wrong shapes) are distinguished
/// from internal invariant violations by [`Error::is_internal`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("variable count mismatch: {0} vs {1}")]
    VariableCountMismatch(usize, usize),
    #[error("ring mismatch: expected {0}")]
    RingMismatch(&'static str),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("linear series mixes degrees or variable counts")]
    MixedDegrees,
    #[error("input form is not concise")]
    NotConciseInput,
    #[error("no suitable generic splitting map found after {0} attempts")]
    DegenerateRandomness(usize),
    #[error("splitting space is scalar although an equipotent generator exists")]
    ScalarSplittingSpace,
    #[error("degree {0} is not supported in strict mode")]
    UnsupportedDegree(usize),
    #[error("malformed limit normal form: {0}")]
    MalformedNormalForm(String),
    #[error("bad summand dimensions: {0}")]
    BadDims(String),
    #[error("form is not binary (n = {0})")]
    NotBinary(usize),
    #[error("family is identically zero")]
    ZeroFamily,
    #[error("family specializes to zero at t = 0")]
    ZeroAtOrigin,
    #[error("modulus is not irreducible over Q")]
    NotIrreducible,
    #[error("modulus must be monic of degree >= 1")]
    BadModulus,
    #[error("nested or mixed extensions are not supported")]
    NestedExtension,
    #[error("size guard: dim {0} exceeds cap {1}")]
    SizeGuard(usize, usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Internal(_)
                | Error::DegenerateRandomness(_)
                | Error::ScalarSplittingSpace
                | Error::MalformedNormalForm(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
