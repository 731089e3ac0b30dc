//! Construction, cross-checking and arithmetic verification of the
//! binomial double-sum polynomials
//!
//! ```text
//! S_n^(m)(x) = sum_{i,j=0..n} C(n,i)^m C(n,j)^m C(i+j,i) x^(i+j)
//! ```
//!
//! together with the identities, congruences, q-log-convexity claims and
//! series for `1/pi` attached to them. Everything is exact: rationals and
//! residues are arbitrary precision, and the only real-number work (the
//! series module) uses certified interval enclosures.

pub mod conjectures;
pub mod error;
pub mod exactmath;
pub mod polyfamily;
pub mod qconvex;
pub mod report;
pub mod series;
pub mod suites;
pub mod theorems;

pub use error::{Error, Result};
pub use exactmath::{ExactRational, Polynomial, Residue, ResiduePolynomial, Scalar};

/// Polynomial with big-integer coefficients.
pub type IntPolynomial = Polynomial<num_bigint::BigInt>;
/// Polynomial with exact rational coefficients.
pub type RatPolynomial = Polynomial<ExactRational>;
/// Polynomial with `f64` coefficients, for quick numerical inspection.
pub type FloatPolynomial = Polynomial<f64>;
