use thiserror::Error;

/// Errors reported by form arithmetic and the certification pipeline.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos} (form has {n_vars} variables)")]
    UnknownVariable {
        name: String,
        pos: usize,
        n_vars: usize,
    },
    #[error("non-homogeneous input: term of degree {found} mixed with degree {expected}")]
    NonHomogeneous { expected: u32, found: u32 },
    #[error("dimension mismatch: expected {expected} variables, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degree mismatch: cannot add a form of degree {left} to one of degree {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("scale entry {index} is zero; variable scaling must be invertible")]
    ZeroScale { index: usize },
    #[error("matrix is singular; linear change of variables must be invertible")]
    SingularMatrix,
    #[error("not divisible: remainder has leading term with exponents {leading:?}")]
    NotDivisible { leading: Vec<u32> },
    #[error("divisor must be a non-zero linear form")]
    NotLinear,
    #[error("form has odd degree {degree}; sum-of-squares analysis needs even degree")]
    OddDegree { degree: u32 },
    #[error("form is not even: monomial {exponents:?} has an odd exponent")]
    NotEven { exponents: Vec<u32> },
    #[error("epsilon must satisfy 0 < epsilon <= 1, got {value}")]
    EpsilonOutOfRange { value: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("certificate is not valid for this form")]
    InvalidCertificate,
}

pub type Result<T> = std::result::Result<T, Error>;
