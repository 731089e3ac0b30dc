//! Enclosures of `pi` and of square roots, built from exact rationals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::{pow10, HighPrecisionReal};
use crate::ExactRational;

/// `atan(1/x)` truncated once the next term drops below `tol`.
/// Returns the partial sum and the alternating-series remainder bound.
fn atan_inv(x: u64, tol: &ExactRational) -> (ExactRational, ExactRational) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = x.clone();
    let mut sum = ExactRational::zero();
    let mut k: u64 = 0;
    loop {
        let term = ExactRational::new(BigInt::one(), &power * BigInt::from(2 * k + 1));
        if &term < tol {
            return (sum, term);
        }
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &x2;
        k += 1;
    }
}

fn machin_like(digits: u32, parts: &[(i64, u64)]) -> HighPrecisionReal {
    let scale = digits + 2;
    let tol = ExactRational::new(BigInt::one(), pow10(digits + 4));
    let mut value = ExactRational::zero();
    let mut err = ExactRational::zero();
    for &(coef, x) in parts {
        let (s, e) = atan_inv(x, &tol);
        let c = ExactRational::from_integer(coef.into());
        err += c.abs() * e;
        value += c * s;
    }
    HighPrecisionReal::from_rational_with_error(&value, &err, scale)
}

/// `pi = 16 atan(1/5) - 4 atan(1/239)`, radius below `10^-digits`.
pub fn pi_highprec(digits: u32) -> HighPrecisionReal {
    assert!(digits >= 1, "digits must be positive");
    machin_like(digits, &[(16, 5), (-4, 239)])
}

/// `pi = 48 atan(1/18) + 32 atan(1/57) - 20 atan(1/239)`, an independent formula
/// used to cross-check [`pi_highprec`].
pub fn pi_highprec_gauss(digits: u32) -> HighPrecisionReal {
    assert!(digits >= 1, "digits must be positive");
    machin_like(digits, &[(48, 18), (32, 57), (-20, 239)])
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Enclosure of `sqrt(d)` with radius below `10^-digits`. Exact when `d` is
/// the square of a rational with terminating decimal expansion.
pub fn sqrt_highprec(d: &ExactRational, digits: u32) -> HighPrecisionReal {
    assert!(d.is_positive(), "square root of a non-positive number");
    let scale = digits + 1;
    if let (Some(a), Some(b)) = (exact_sqrt(d.numer()), exact_sqrt(d.denom())) {
        return HighPrecisionReal::from_rational(&ExactRational::new(a, b), scale);
    }
    // sqrt(d) * 10^S lies in [isqrt(N), isqrt(N) + 1] with N = floor(d * 10^2S).
    let n = (d * ExactRational::from_integer(pow10(2 * scale))).floor().to_integer();
    let s = n.sqrt();
    HighPrecisionReal::from_bounds(s.clone(), s + 1, scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn pi_small_digits() {
        let p = pi_highprec(1);
        assert!(p.contains(&rat(314159, 100000)));
        assert!(p.width() < rat(2, 10));
        let p15 = pi_highprec(15);
        assert!(p15.to_string().starts_with("3.14159265358979"));
    }

    #[test]
    fn pi_formulas_agree() {
        for d in [5, 15, 50] {
            let a = pi_highprec(d);
            let b = pi_highprec_gauss(d);
            assert!(a.overlaps(&b));
            assert!(a.agreed_digits(&b) >= d as i64);
        }
        assert!(pi_highprec(50).width() < ExactRational::new(BigInt::one(), pow10(50)));
    }

    #[test]
    fn sqrt_cases() {
        let two = sqrt_highprec(&rat(4, 1), 7);
        assert_eq!(two.radius(), &BigInt::zero());
        assert!(two.contains(&rat(2, 1)));
        assert!(sqrt_highprec(&rat(9, 4), 3).contains(&rat(3, 2)));

        let r2 = sqrt_highprec(&rat(2, 1), 20);
        assert!(r2.to_string().starts_with("1.41421356237309504880"));
        assert!(r2.mul(&r2).contains(&rat(2, 1)));
        let r39 = sqrt_highprec(&rat(39, 1), 20);
        assert!(r39.mul(&r39).contains(&rat(39, 1)));
        assert!(r39.width() < ExactRational::new(BigInt::one(), pow10(20)));
    }
}
