//! Exact arithmetic in `Q(sqrt 5)`.

use std::fmt;

use num_traits::Zero;

use super::constants::sqrt_highprec;
use super::interval::{decimal_len, HighPrecisionReal};
use crate::ExactRational;

/// `a + b sqrt(5)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticNumber {
    pub a: ExactRational,
    pub b: ExactRational,
}

impl QuadraticNumber {
    pub fn new(a: ExactRational, b: ExactRational) -> Self {
        QuadraticNumber { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(
            ExactRational::from_integer(a.into()),
            ExactRational::from_integer(b.into()),
        )
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let five = ExactRational::from_integer(5.into());
        Self::new(
            &self.a * &o.a + five * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }

    pub fn scale(&self, q: &ExactRational) -> Self {
        Self::new(&self.a * q, &self.b * q)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.a, -&self.b)
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -&self.b)
    }

    /// `a^2 - 5 b^2`.
    pub fn norm(&self) -> ExactRational {
        &self.a * &self.a - ExactRational::from_integer(5.into()) * &self.b * &self.b
    }

    /// Enclosure at `scale`. The working precision is raised by the size
    /// of the components so that cancellation between them is absorbed.
    pub fn to_interval(&self, scale: u32) -> HighPrecisionReal {
        let size = decimal_len(self.a.numer())
            .max(decimal_len(self.b.numer()))
            .max(decimal_len(self.a.denom()))
            .max(decimal_len(self.b.denom()));
        let work = scale + size + 5;
        let root5 = sqrt_highprec(&ExactRational::from_integer(5.into()), work);
        let b_part = root5.scale_by_rational(&self.b);
        HighPrecisionReal::from_rational(&self.a, work)
            .add(&b_part)
            .rescale(scale)
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt(5)", self.a, self.b)
    }
}
