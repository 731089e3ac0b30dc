use std::fmt;

use super::arith::{inverse_mod, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// An element of `Z/m` that carries its modulus.
///
/// Binary operations between residues of different moduli are errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Residue {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: u64) -> Self {
        Residue::new(value.rem_euclid(modulus as i64) as u64, modulus)
    }

    pub fn zero(modulus: u64) -> Self {
        Residue::new(0, modulus)
    }

    pub fn one(modulus: u64) -> Self {
        Residue::new(1, modulus)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &Residue) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Residue) -> Result<Residue> {
        self.check(other)?;
        Ok(Residue::new(
            ((self.value as u128 + other.value as u128) % self.modulus as u128) as u64,
            self.modulus,
        ))
    }

    pub fn sub(&self, other: &Residue) -> Result<Residue> {
        self.check(other)?;
        Ok(Residue::new(
            (self.value + self.modulus - other.value) % self.modulus,
            self.modulus,
        ))
    }

    pub fn mul(&self, other: &Residue) -> Result<Residue> {
        self.check(other)?;
        Ok(Residue::new(
            mul_mod(self.value, other.value, self.modulus),
            self.modulus,
        ))
    }

    pub fn neg(&self) -> Residue {
        Residue::new((self.modulus - self.value) % self.modulus, self.modulus)
    }

    pub fn pow(&self, exp: u64) -> Residue {
        Residue::new(pow_mod(self.value, exp, self.modulus), self.modulus)
    }

    pub fn inverse(&self) -> Result<Residue> {
        inverse_mod(self.value, self.modulus)
            .map(|v| Residue::new(v, self.modulus))
            .ok_or_else(|| Error::NonInvertibleDenominator {
                denominator: self.value.to_string(),
                modulus: self.modulus.to_string(),
            })
    }

    /// Same class viewed modulo a divisor of the modulus.
    pub fn reduce_to(&self, modulus: u64) -> Result<Residue> {
        if modulus == 0 || !self.modulus.is_multiple_of(modulus) {
            return Err(Error::InvalidArgument(format!(
                "{modulus} does not divide {}",
                self.modulus
            )));
        }
        Ok(Residue::new(self.value, modulus))
    }

    /// Representative in `(-m/2, m/2]`.
    pub fn signed(&self) -> i64 {
        let v = self.value as i64;
        let m = self.modulus as i64;
        if 2 * v > m {
            v - m
        } else {
            v
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}
