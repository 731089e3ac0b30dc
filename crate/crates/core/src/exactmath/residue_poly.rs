use std::fmt;

use num_bigint::BigInt;

use super::arith::{big_mod, mul_mod, reduce_mod};
use super::residue::Residue;
use super::ExactRational;
use crate::error::{Error, Result};

/// Dense polynomial over `Z/m` with one shared modulus.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResiduePolynomial {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl ResiduePolynomial {
    pub fn new(coeffs: Vec<u64>, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % modulus).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ResiduePolynomial { modulus, coeffs }
    }

    pub fn from_i64s(coeffs: &[i64], modulus: u64) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| c.rem_euclid(modulus as i64) as u64)
                .collect(),
            modulus,
        )
    }

    pub fn from_bigints(coeffs: &[BigInt], modulus: u64) -> Self {
        Self::new(coeffs.iter().map(|c| big_mod(c, modulus)).collect(), modulus)
    }

    pub fn from_rationals(coeffs: &[ExactRational], modulus: u64) -> Result<Self> {
        let cs = coeffs
            .iter()
            .map(|c| reduce_mod(c, modulus).map(|r| r.value()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(cs, modulus))
    }

    pub fn zero(modulus: u64) -> Self {
        Self::new(Vec::new(), modulus)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }

    fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::new(
            (0..n)
                .map(|i| ((self.coeff(i) as u128 + other.coeff(i) as u128) % self.modulus as u128) as u64)
                .collect(),
            self.modulus,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|&c| (self.modulus - c) % self.modulus)
                .collect(),
            self.modulus,
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.modulus));
        }
        let m = self.modulus;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, m)) % m;
            }
        }
        Ok(Self::new(out, m))
    }

    pub fn scale(&self, c: &Residue) -> Result<Self> {
        if c.modulus() != self.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: c.modulus(),
            });
        }
        Ok(Self::new(
            self.coeffs
                .iter()
                .map(|&a| mul_mod(a, c.value(), self.modulus))
                .collect(),
            self.modulus,
        ))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::new(vec![1], self.modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same modulus");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same modulus");
            }
        }
        acc
    }

    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check(inner)?;
        let mut acc = Self::zero(self.modulus);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?.add(&Self::new(vec![c], self.modulus))?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % self.modulus, self.modulus))
                .collect(),
            self.modulus,
        )
    }

    pub fn eval(&self, x: &Residue) -> Result<Residue> {
        if x.modulus() != self.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: x.modulus(),
            });
        }
        let m = self.modulus;
        let v = self
            .coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (mul_mod(acc, x.value(), m) + c) % m);
        Ok(Residue::new(v, m))
    }

    /// Remainder of division by a monic polynomial.
    pub fn rem_monic(&self, divisor: &Self) -> Result<Self> {
        self.check(divisor)?;
        let Some(dd) = divisor.degree() else {
            return Err(Error::InvalidArgument("division by zero polynomial".into()));
        };
        if divisor.coeffs[dd] != 1 {
            return Err(Error::InvalidArgument("divisor must be monic".into()));
        }
        let m = self.modulus;
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = r.len() - 1;
            let lead = r[top];
            if lead != 0 {
                for (i, &d) in divisor.coeffs.iter().enumerate() {
                    let idx = top - dd + i;
                    r[idx] = (r[idx] + m - mul_mod(lead, d, m)) % m;
                }
            }
            r.pop();
        }
        Ok(Self::new(r, m))
    }
}

impl fmt::Debug for ResiduePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} (mod {})", self.coeffs, self.modulus)
    }
}
