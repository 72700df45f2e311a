use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("empty polynomial expression")]
    EmptyInput,
    #[error("monomials of different total degree ({first} and {second})")]
    MixedDegree { first: usize, second: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("{op} requires degree >= {min}, got {got}")]
    DegreeTooLow {
        op: &'static str,
        min: usize,
        got: usize,
    },
    #[error("{op} is undefined for the zero form")]
    ZeroForm { op: &'static str },
    #[error("{op} is undefined for the zero polynomial")]
    ZeroPolynomial { op: &'static str },
    #[error("a form of odd degree {0} cannot be sign-definite")]
    OddDegree(usize),
    #[error("linear form must be nonzero")]
    ZeroLinearForm,
    #[error("form is not hyperbolic")]
    NotHyperbolic,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("refinement budget exhausted: {0}")]
    RefinementExhausted(String),
    #[error("sample left the hyperbolic cone at phi = {phi}")]
    ConeViolation { phi: f64 },
    #[error("no real asymptotic directions (discriminant {0} <= 0)")]
    NonPositiveDiscriminant(f64),
    #[error("the origin is a singular point")]
    AtOrigin,
    #[error("exact identity failed: {0}")]
    IdentityFailure(String),
    #[error("isotopy {kind} is not hyperbolic at t = {t}")]
    IsotopyFailure { kind: String, t: String },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("internal disagreement: {0}")]
    Internal(String),
}
