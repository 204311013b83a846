use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gcd({b}, {a}) is not 1")]
    NotCoprime { b: i64, a: i64 },
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(i64),
    #[error("line bundle class violates e = sum (gamma_i + delta_i)/a_i mod 1: {0}")]
    InconsistentClass(String),
    #[error("spin^c conditions violated: {0}")]
    ConditionViolation(String),
    #[error("pin^c eta invariant is only defined for trivial fibre holonomy (m = 0)")]
    WrongHolonomy,
    #[error("geometric parameter did not cancel: t coefficient {c1}, t^2 coefficient {c2}")]
    GeometricResidue { c1: String, c2: String },
    #[error("group sum has imaginary part {0:e}")]
    NonRealResult(f64),
    #[error("circle bundle over RP^2 needs nonzero Euler number")]
    ZeroEuler,
    #[error("invalid fraction {a}/{b}: need gcd 1 and 0 < b < a")]
    InvalidFraction { a: i64, b: i64 },
    #[error("Seifert data not in the special form: {0}")]
    WrongForm(String),
    #[error("invalid prism parameters m={m}, r={r}: need positive coprime integers")]
    InvalidPrism { m: i64, r: i64 },
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
