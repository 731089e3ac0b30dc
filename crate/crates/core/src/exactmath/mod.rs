//! Exact arithmetic substrate: big rationals, residues modulo `m`, dense
//! polynomials, Jacobi symbols, primes and p-adic valuations.

pub mod arith;
pub mod poly;
pub mod residue;
pub mod residue_poly;

pub use arith::{
    binomial, binomial_row, binomial_table_mod, is_prime, jacobi, padic_valuation, primes_up_to,
    reduce_mod, PadicValuation,
};
pub use poly::{Polynomial, Scalar};
pub use residue::Residue;
pub use residue_poly::ResiduePolynomial;

/// Reduced fraction of arbitrary-precision integers; zero is `0/1`.
pub type ExactRational = num_rational::BigRational;

/// Shorthand for building small rationals.
pub fn rat(num: i64, den: i64) -> ExactRational {
    ExactRational::new(num.into(), den.into())
}

/// Parses `"a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Option<ExactRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse().ok()?, d.trim().parse().ok()?),
        None => (s.parse().ok()?, num_bigint::BigInt::from(1)),
    };
    if num_traits::Zero::is_zero(&d) {
        return None;
    }
    Some(ExactRational::new(n, d))
}
