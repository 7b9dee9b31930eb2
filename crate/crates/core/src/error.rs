use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("attach needs two nonempty compositions")]
    EmptyAttach,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("unsupported basis `{0}` for this operation")]
    UnsupportedBasis(String),
    #[error("operator defined up to degree {bound}, applied in degree {degree}")]
    DegreeBound { bound: usize, degree: usize },
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("cyclotomic reduction needs a polynomial in q alone with nonnegative exponents")]
    NotUnivariate,
    #[error("substitution is not defined here: {0}")]
    Substitution(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("scalar is not invertible in factored form: {0}")]
    NotInvertible(String),
    #[error("orthogonality fails at ({alpha}, {beta})")]
    NotOrthogonal { alpha: String, beta: String },
    #[error("identity does not hold: {0}")]
    IdentityFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
