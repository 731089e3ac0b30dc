//! Decimal fixed-point intervals `[m - e, m + e] * 10^-S`.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighPrecisionReal {
    mantissa: BigInt,
    radius: BigInt,
    scale: u32,
}

pub(crate) fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Number of decimal digits of `|n|`; zero has none.
pub(crate) fn decimal_len(n: &BigInt) -> u32 {
    if n.is_zero() {
        0
    } else {
        n.abs().to_string().len() as u32
    }
}

impl HighPrecisionReal {
    /// The interval `[lo, hi] * 10^-scale`, stored as midpoint and radius.
    pub fn from_bounds(lo: BigInt, hi: BigInt, scale: u32) -> Self {
        debug_assert!(lo <= hi);
        let sum = &lo + &hi;
        let mantissa = div_floor(&sum, &BigInt::from(2));
        let radius = (&hi - &mantissa).max(&mantissa - &lo);
        HighPrecisionReal {
            mantissa,
            radius,
            scale,
        }
    }

    pub fn new(mantissa: BigInt, radius: BigInt, scale: u32) -> Self {
        assert!(!radius.is_negative(), "negative radius");
        HighPrecisionReal {
            mantissa,
            radius,
            scale,
        }
    }

    /// Smallest enclosure of `q` at this scale; exact when `q * 10^scale` is an integer.
    pub fn from_rational(q: &ExactRational, scale: u32) -> Self {
        let scaled = q * ExactRational::from_integer(pow10(scale));
        if scaled.is_integer() {
            return Self::new(scaled.to_integer(), BigInt::zero(), scale);
        }
        let lo = scaled.floor().to_integer();
        Self::from_bounds(lo.clone(), lo + 1, scale)
    }

    /// `q` widened by an absolute error bound `err`.
    pub fn from_rational_with_error(q: &ExactRational, err: &ExactRational, scale: u32) -> Self {
        let f = ExactRational::from_integer(pow10(scale));
        let lo = ((q - err) * &f).floor().to_integer();
        let hi = ((q + err) * &f).ceil().to_integer();
        Self::from_bounds(lo, hi, scale)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn radius(&self) -> &BigInt {
        &self.radius
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn lo(&self) -> BigInt {
        &self.mantissa - &self.radius
    }

    pub fn hi(&self) -> BigInt {
        &self.mantissa + &self.radius
    }

    pub fn lower_rational(&self) -> ExactRational {
        ExactRational::new(self.lo(), pow10(self.scale))
    }

    pub fn upper_rational(&self) -> ExactRational {
        ExactRational::new(self.hi(), pow10(self.scale))
    }

    pub fn contains(&self, q: &ExactRational) -> bool {
        *q >= self.lower_rational() && *q <= self.upper_rational()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo().is_positive() && !self.hi().is_negative()
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.lo() <= b.hi() && b.lo() <= a.hi()
    }

    /// Changes the scale, widening conservatively when digits are dropped.
    pub fn rescale(&self, scale: u32) -> Self {
        if scale >= self.scale {
            let f = pow10(scale - self.scale);
            return Self::new(&self.mantissa * &f, &self.radius * &f, scale);
        }
        let f = pow10(self.scale - scale);
        Self::from_bounds(div_floor(&self.lo(), &f), div_ceil(&self.hi(), &f), scale)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let s = self.scale.max(other.scale);
        (self.rescale(s), other.rescale(s))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Self::new(&a.mantissa + &b.mantissa, &a.radius + &b.radius, a.scale)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Self::new(&a.mantissa - &b.mantissa, &a.radius + &b.radius, a.scale)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.mantissa, self.radius.clone(), self.scale)
    }

    /// Product over all endpoint pairs, rounded outward.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let f = pow10(a.scale);
        let products = [a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()];
        let min = products.iter().min().expect("four");
        let max = products.iter().max().expect("four");
        Self::from_bounds(div_floor(min, &f), div_ceil(max, &f), a.scale)
    }

    /// Quotient over all endpoint pairs; the divisor must exclude zero.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other);
        if b.contains_zero() {
            return Err(Error::InvalidArgument("interval division by an enclosure of zero".into()));
        }
        let f = pow10(a.scale);
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for n in [a.lo(), a.hi()] {
            for d in [b.lo(), b.hi()] {
                let num = &n * &f;
                let q_lo = div_floor(&num, &d);
                let q_hi = div_ceil(&num, &d);
                if lo.as_ref().is_none_or(|l| q_lo < *l) {
                    lo = Some(q_lo);
                }
                if hi.as_ref().is_none_or(|h| q_hi > *h) {
                    hi = Some(q_hi);
                }
            }
        }
        Ok(Self::from_bounds(lo.expect("set"), hi.expect("set"), a.scale))
    }

    pub fn scale_by_rational(&self, q: &ExactRational) -> Self {
        let exact = Self::from_rational(q, self.scale);
        self.mul(&exact)
    }

    /// Decimal digits on which two enclosures agree:
    /// `S - len(|m1 - m2| + e1 + e2)` at the common scale.
    pub fn agreed_digits(&self, other: &Self) -> i64 {
        let (a, b) = self.aligned(other);
        let spread = (&a.mantissa - &b.mantissa).abs() + &a.radius + &b.radius;
        a.scale as i64 - decimal_len(&spread) as i64
    }

    /// Width `2e * 10^-S` as an exact rational.
    pub fn width(&self) -> ExactRational {
        ExactRational::new(2 * &self.radius, pow10(self.scale))
    }

    pub fn to_f64(&self) -> f64 {
        let s = self.mantissa.to_string();
        s.parse::<f64>().unwrap_or(f64::NAN) / 10f64.powi(self.scale as i32)
    }
}

impl fmt::Display for HighPrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = self.mantissa.sign() == Sign::Minus;
        let digits = self.mantissa.abs().to_string();
        let s = self.scale as usize;
        let padded = if digits.len() <= s {
            format!("{}{}", "0".repeat(s + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int, frac) = padded.split_at(padded.len() - s);
        write!(f, "{}{}", if neg { "-" } else { "" }, int)?;
        if s > 0 {
            write!(f, ".{frac}")?;
        }
        write!(f, " ± {}e-{}", self.radius, self.scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use num_traits::One;

    #[test]
    fn rational_enclosure() {
        let x = HighPrecisionReal::from_rational(&rat(1, 3), 5);
        assert!(x.contains(&rat(1, 3)));
        assert!(x.width() <= rat(2, 100000));
        let y = HighPrecisionReal::from_rational(&rat(1, 4), 2);
        assert_eq!(y.radius(), &BigInt::zero());
        assert_eq!(y.to_string(), "0.25 ± 0e-2");
    }

    #[test]
    fn arithmetic_contains_exact() {
        let a = HighPrecisionReal::from_rational(&rat(-2, 7), 12);
        let b = HighPrecisionReal::from_rational(&rat(5, 3), 12);
        assert!(a.add(&b).contains(&(rat(-2, 7) + rat(5, 3))));
        assert!(a.sub(&b).contains(&(rat(-2, 7) - rat(5, 3))));
        assert!(a.mul(&b).contains(&(rat(-2, 7) * rat(5, 3))));
        assert!(a.div(&b).unwrap().contains(&(rat(-2, 7) / rat(5, 3))));
        let z = HighPrecisionReal::from_rational(&rat(0, 1), 3);
        assert!(a.div(&z).is_err());
    }

    #[test]
    fn rescale_and_agreement() {
        let a = HighPrecisionReal::from_rational(&rat(22, 7), 20);
        let b = a.rescale(10);
        assert!(b.contains(&rat(22, 7)));
        assert!(a.overlaps(&b));
        assert!(a.agreed_digits(&a) >= 19);
        let c = HighPrecisionReal::from_rational(&rat(355, 113), 20);
        let d = a.agreed_digits(&c);
        assert!((1..=3).contains(&d), "{d}");
    }

    #[test]
    fn display_negative() {
        let a = HighPrecisionReal::new(BigInt::from(-5), BigInt::one(), 3);
        assert_eq!(a.to_string(), "-0.005 ± 1e-3");
    }
}
