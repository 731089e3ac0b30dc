use thiserror::Error;

/// Errors raised by the arithmetic substrate and the verification engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("denominator {denominator} is not invertible modulo {modulus}")]
    NonInvertibleDenominator { denominator: String, modulus: String },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("polynomial is not in Q[x(x+1)]: odd leading degree {degree} remains")]
    NotInU { degree: usize },

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("no representation {target} = {a}x^2 + {d}y^2")]
    NoRepresentationFound { target: u64, a: u64, d: u64 },

    #[error("cannot normalize ({x}, {y}) under rule {rule}")]
    NormalizationImpossible { x: i64, y: i64, rule: String },

    #[error("series divergence suspected: empirical ratio {ratio:.6} after {terms} terms")]
    DivergenceSuspected { ratio: f64, terms: usize },

    #[error("expression error: {0}")]
    Expr(String),

    #[error("registry line {line}, field `{field}`: {message}")]
    Registry {
        line: usize,
        field: String,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
