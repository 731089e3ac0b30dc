//! Dense univariate polynomials over a generic scalar ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::residue_poly::ResiduePolynomial;
use super::ExactRational;
use crate::error::Result;

/// Commutative ring with an embedding of the integers.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    fn pow_u(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Scalar for BigInt {
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }
}

impl Scalar for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

impl Scalar for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        num_traits::ToPrimitive::to_f64(n).unwrap_or(f64::NAN)
    }
}

/// Coefficient list indexed by degree, with no trailing zeros.
/// The zero polynomial is the empty list and has no degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, exp: u32) -> Self {
        Scalar::pow_u(self, exp as u64)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl Polynomial<BigInt> {
    pub fn to_rational(&self) -> Polynomial<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Exact value at a rational point, using a homogeneous Horner scheme so
    /// only one division happens at the end.
    pub fn eval_rational(&self, x: &ExactRational) -> ExactRational {
        let Some(deg) = self.degree() else {
            return ExactRational::zero();
        };
        let (a, b) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        let den = Scalar::pow_u(b, deg as u64);
        ExactRational::new(acc, den)
    }

    /// Divides every coefficient by `d`, or `None` if some division is inexact.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(out))
    }

    pub fn reduce_mod(&self, m: u64) -> ResiduePolynomial {
        ResiduePolynomial::from_bigints(&self.coeffs, m)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl Polynomial<BigRational> {
    /// Integer polynomial if every coefficient is integral.
    pub fn to_integer(&self) -> Option<Polynomial<BigInt>> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(self.map(|c| c.to_integer()))
        } else {
            None
        }
    }

    pub fn reduce_mod(&self, m: u64) -> Result<ResiduePolynomial> {
        ResiduePolynomial::from_rationals(&self.coeffs, m)
    }
}

impl<T: Scalar> Scalar for Polynomial<T> {
    fn from_bigint(n: &BigInt) -> Self {
        Polynomial::constant(T::from_bigint(n))
    }
}

impl<T: Scalar> Zero for Polynomial<T> {
    fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Scalar> One for Polynomial<T> {
    fn one() -> Self {
        Polynomial::constant(T::one())
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let prod = a.clone() * b.clone();
                let slot = std::mem::replace(&mut out[i + j], T::zero());
                out[i + j] = slot + prod;
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Polynomial<T> {
            type Output = Polynomial<T>;

            fn $m(self, rhs: Self) -> Polynomial<T> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        -&self
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Polynomial").field(&self.coeffs).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntPolynomial;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn ring_operations() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
        assert_eq!(p(&[1, 2, 2]).eval(&BigInt::from(1)), BigInt::from(5));
        assert_eq!(p(&[1, 1]).compose(&p(&[0, 1, 1])), p(&[1, 1, 1]));
        assert_eq!(p(&[1, 2, 3]).derivative(), p(&[2, 6]));
        assert_eq!(&p(&[1, 2]) - &p(&[1, 2]), IntPolynomial::zero());
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(IntPolynomial::zero().degree(), None);
        assert_eq!(p(&[0, 0, 0]), IntPolynomial::zero());
        assert_eq!(p(&[3, 0]).degree(), Some(0));
    }

    #[test]
    fn rational_evaluation_matches_generic() {
        let f = p(&[3, -2, 0, 5, 1]);
        let x = BigRational::new(BigInt::from(-2), BigInt::from(7));
        assert_eq!(f.eval_rational(&x), f.to_rational().eval(&x));
        assert_eq!(IntPolynomial::zero().eval_rational(&x), BigRational::zero());
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[4, 6]).div_exact(&BigInt::from(2)), Some(p(&[2, 3])));
        assert_eq!(p(&[4, 5]).div_exact(&BigInt::from(2)), None);
    }
}
