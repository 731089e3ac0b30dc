//! The polynomial families: `S_n^(m)`, generalized central trinomial
//! coefficients `T_n(b,c)`, Apéry numbers and Legendre polynomials, each by
//! every available formula so the formulas can be checked against each other.
//!
//! [`s_poly_direct`] is the defining double sum and serves as the oracle for
//! all other forms.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactmath::arith::{binomial_row, mul_mod};
use crate::exactmath::{binomial, ExactRational, Residue, Scalar};
use crate::IntPolynomial;

/// Exponent `m` and index `n` of `S_n^(m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilyIndex {
    pub m: u32,
    pub n: usize,
}

impl FamilyIndex {
    pub fn new(m: u32, n: usize) -> Self {
        FamilyIndex { m, n }
    }

    pub fn poly(&self) -> Arc<IntPolynomial> {
        s_poly(self.m, self.n)
    }
}

fn pow_big(b: &BigInt, m: u32) -> BigInt {
    num_traits::pow(b.clone(), m as usize)
}

/// `S_n^(m)(x)` from the defining double sum over `(i, j)`.
pub fn s_poly_direct(m: u32, n: usize) -> IntPolynomial {
    let row_n = binomial_row(n);
    let powered: Vec<BigInt> = row_n.iter().map(|c| pow_big(c, m)).collect();
    let mut coeffs = Vec::with_capacity(2 * n + 1);
    for s in 0..=2 * n {
        let row_s = binomial_row(s);
        let lo = s.saturating_sub(n);
        let hi = s.min(n);
        let mut acc = BigInt::zero();
        for i in lo..=hi {
            acc += &powered[i] * &powered[s - i] * &row_s[i];
        }
        coeffs.push(acc);
    }
    IntPolynomial::new(coeffs)
}

type PolyCache = RwLock<HashMap<(u32, usize), Arc<IntPolynomial>>>;

fn s_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized [`s_poly_direct`].
pub fn s_poly(m: u32, n: usize) -> Arc<IntPolynomial> {
    if let Some(p) = s_cache().read().expect("cache poisoned").get(&(m, n)) {
        return Arc::clone(p);
    }
    let p = Arc::new(s_poly_direct(m, n));
    s_cache()
        .write()
        .expect("cache poisoned")
        .entry((m, n))
        .or_insert(p)
        .clone()
}

/// Exact value `S_n^(m)(x)` at a rational point.
pub fn s_value(m: u32, n: usize, x: &ExactRational) -> ExactRational {
    s_poly(m, n).eval_rational(x)
}

/// The sum-of-squares form of `S_n^(m)`; for `m = 0` the single-index form.
pub fn s_poly_sumsq(m: u32, n: usize) -> IntPolynomial {
    let mut total = IntPolynomial::zero();
    let row_n = binomial_row(n);
    for k in 0..=n {
        let inner = if m == 0 {
            IntPolynomial::new((0..=n - k).map(|j| binomial((j + k) as u64, k as i64)).collect())
        } else {
            let row_nk = binomial_row(n - k);
            IntPolynomial::new(
                (0..=n - k)
                    .map(|j| pow_big(&row_n[j + k], m - 1) * &row_nk[j])
                    .collect(),
            )
        };
        let weight = if m == 0 {
            BigInt::one()
        } else {
            &row_n[k] * &row_n[k]
        };
        let term = &(&inner * &inner) * &IntPolynomial::monomial(weight, 2 * k);
        total = &total + &term;
    }
    total
}

/// The two closed forms available for `S_n^(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum S1Form {
    /// `sum_k C(n,k)^2 x^(2k) (1+x)^(2(n-k))`
    Squares,
    /// `sum_k C(n,k) C(n+k,k) x^(2k) (2x+1)^(n-k)`
    Trinomial,
}

pub fn s1_closed(n: usize, form: S1Form) -> IntPolynomial {
    let one_plus_x = IntPolynomial::from_i64s(&[1, 1]);
    let two_x_plus_one = IntPolynomial::from_i64s(&[1, 2]);
    let mut total = IntPolynomial::zero();
    for k in 0..=n {
        let term = match form {
            S1Form::Squares => {
                let c = binomial(n as u64, k as i64);
                &IntPolynomial::monomial(&c * &c, 2 * k) * &one_plus_x.pow(2 * (n - k) as u32)
            }
            S1Form::Trinomial => {
                let c = binomial(n as u64, k as i64) * binomial((n + k) as u64, k as i64);
                &IntPolynomial::monomial(c, 2 * k) * &two_x_plus_one.pow((n - k) as u32)
            }
        };
        total = &total + &term;
    }
    total
}

/// `S_0^(1)(x), ..., S_N^(1)(x)` from the three-term recurrence
/// `(n+2) S_{n+2} = (2n+3)(2x^2+2x+1) S_{n+1} - (n+1)(2x+1)^2 S_n`.
pub fn s1_recurrence_sequence(big_n: usize, x: &ExactRational) -> Vec<ExactRational> {
    let one = ExactRational::one();
    let two = ExactRational::from_i64(2);
    let a = &two * x * x + &two * x + &one;
    let b = (&two * x + &one) * (&two * x + &one);
    let mut seq = vec![one.clone(), a.clone()];
    for n in 0..big_n.saturating_sub(1) {
        let nf = ExactRational::from_i64(n as i64);
        let next = ((ExactRational::from_i64(2 * n as i64 + 3) * &a * &seq[n + 1])
            - ((&nf + &one) * &b * &seq[n]))
            / (nf + &two);
        seq.push(next);
    }
    seq.truncate(big_n + 1);
    seq
}

/// Left side minus right side of the `S^(1)` recurrence at index `n`, as a
/// polynomial; zero when the recurrence holds.
pub fn s1_recurrence_residual(n: usize) -> IntPolynomial {
    let a = IntPolynomial::from_i64s(&[1, 2, 2]);
    let b = IntPolynomial::from_i64s(&[1, 4, 4]);
    let lhs = s_poly(1, n + 2).scale(&BigInt::from(n + 2));
    let mid = (&a * &s_poly(1, n + 1)).scale(&BigInt::from(2 * n + 3));
    let low = (&b * &s_poly(1, n)).scale(&BigInt::from(n + 1));
    &(&lhs - &mid) + &low
}

/// Arguments of `T_n(b, c)`; any scalar ring works, including polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct TrinomialParams<T> {
    pub b: T,
    pub c: T,
}

/// `T_n(b,c) = sum_k C(n,2k) C(2k,k) b^(n-2k) c^k`, the coefficient of `z^n`
/// in `(z^2 + b z + c)^n`.
pub fn trinomial_t<T: Scalar>(n: usize, params: &TrinomialParams<T>) -> T {
    let mut acc = T::zero();
    for k in 0..=n / 2 {
        let coeff = binomial(n as u64, 2 * k as i64) * binomial(2 * k as u64, k as i64);
        acc = acc
            + T::from_bigint(&coeff) * params.b.pow_u((n - 2 * k) as u64) * params.c.pow_u(k as u64);
    }
    acc
}

/// Which factor multiplies `T_n` in the three-term recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrinomialVariant {
    /// `(n+1)(n^2 - 4c)`.
    Printed,
    /// `(n+1)(b^2 - 4c)`, the standard form.
    Standard,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceCheck {
    pub variant: TrinomialVariant,
    pub holds: bool,
    /// Smallest `n` for which the relation between `T_n, T_{n+1}, T_{n+2}` fails.
    pub first_failure: Option<usize>,
}

/// Tests `(n+2)T_{n+2} = (2n+3) b T_{n+1} - (n+1) F T_n` for `n <= N - 2`.
pub fn trinomial_recurrence_check(
    big_n: usize,
    b: i64,
    c: i64,
    variant: TrinomialVariant,
) -> RecurrenceCheck {
    let params = TrinomialParams {
        b: BigInt::from(b),
        c: BigInt::from(c),
    };
    let t: Vec<BigInt> = (0..=big_n).map(|n| trinomial_t(n, &params)).collect();
    let mut first_failure = None;
    for n in 0..=big_n.saturating_sub(2) {
        if n + 2 > big_n {
            break;
        }
        let nn = BigInt::from(n);
        let factor = match variant {
            TrinomialVariant::Printed => &nn * &nn - 4 * &params.c,
            TrinomialVariant::Standard => &params.b * &params.b - 4 * &params.c,
        };
        let lhs = BigInt::from(n + 2) * &t[n + 2];
        let rhs = BigInt::from(2 * n + 3) * &params.b * &t[n + 1]
            - BigInt::from(n + 1) * factor * &t[n];
        if lhs != rhs {
            first_failure = Some(n);
            break;
        }
    }
    RecurrenceCheck {
        variant,
        holds: first_failure.is_none(),
        first_failure,
    }
}

/// `A_n = sum_k C(n,k)^2 C(n+k,k)^2`.
pub fn apery(n: usize) -> BigInt {
    (0..=n)
        .map(|k| {
            let t = binomial(n as u64, k as i64) * binomial((n + k) as u64, k as i64);
            &t * &t
        })
        .sum()
}

/// `P_n(z) = sum_k C(n,k) C(n+k,k) ((z-1)/2)^k`.
pub fn legendre_p(n: usize, z: &ExactRational) -> ExactRational {
    let h = (z - ExactRational::one()) / ExactRational::from_i64(2);
    let mut acc = ExactRational::zero();
    let mut hk = ExactRational::one();
    for k in 0..=n {
        let c = binomial(n as u64, k as i64) * binomial((n + k) as u64, k as i64);
        acc += ExactRational::from_integer(c) * &hk;
        hk *= &h;
    }
    acc
}

/// Modular evaluation of `S_n^(m)` with a Pascal table held modulo `M`.
#[derive(Debug, Clone)]
pub struct ModularFamily {
    modulus: u64,
    pascal: Vec<Vec<u64>>,
}

impl ModularFamily {
    /// Supports indices `n <= max_n`.
    pub fn new(max_n: usize, modulus: u64) -> Self {
        ModularFamily {
            modulus,
            pascal: crate::exactmath::binomial_table_mod(2 * max_n, modulus),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn binom(&self, n: usize, k: usize) -> u64 {
        if k > n {
            0
        } else {
            self.pascal[n][k]
        }
    }

    /// Coefficients of `S_n^(m)` reduced modulo `M`.
    pub fn s_coeffs(&self, m: u32, n: usize) -> Vec<u64> {
        let md = self.modulus;
        let powered: Vec<u64> = (0..=n)
            .map(|i| crate::exactmath::arith::pow_mod(self.binom(n, i), m as u64, md))
            .collect();
        (0..=2 * n)
            .map(|s| {
                let mut acc = 0u64;
                for i in s.saturating_sub(n)..=s.min(n) {
                    let t = mul_mod(mul_mod(powered[i], powered[s - i], md), self.binom(s, i), md);
                    acc = (acc + t) % md;
                }
                acc
            })
            .collect()
    }

    pub fn s_eval(&self, m: u32, n: usize, x: &Residue) -> Residue {
        assert_eq!(x.modulus(), self.modulus, "modulus mismatch");
        let md = self.modulus;
        let v = self
            .s_coeffs(m, n)
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (mul_mod(acc, x.value(), md) + c) % md);
        Residue::new(v, md)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    /// Term-by-term double sum with no shared code path.
    fn naive_s(m: u32, n: usize) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); 2 * n + 1];
        for i in 0..=n {
            for j in 0..=n {
                let ci = binomial(n as u64, i as i64);
                let cj = binomial(n as u64, j as i64);
                coeffs[i + j] += pow_big(&ci, m) * pow_big(&cj, m) * binomial((i + j) as u64, i as i64);
            }
        }
        IntPolynomial::new(coeffs)
    }

    #[test]
    fn direct_examples() {
        for m in 0..4 {
            assert_eq!(s_poly_direct(m, 0), p(&[1]));
        }
        assert_eq!(s_poly_direct(2, 1), p(&[1, 2, 2]));
        assert_eq!(s_poly_direct(2, 2), p(&[1, 8, 34, 24, 6]));
        assert_eq!(s_poly_direct(2, 2).eval(&BigInt::from(1)), BigInt::from(73));
        for m in 0..4 {
            for n in 0..8 {
                assert_eq!(s_poly_direct(m, n), naive_s(m, n));
            }
        }
    }

    #[test]
    fn sumsq_examples() {
        assert_eq!(s_poly_sumsq(0, 1), p(&[1, 2, 2]));
        assert_eq!(s_poly_sumsq(1, 1), p(&[1, 2, 2]));
        assert_eq!(s_poly_sumsq(2, 2), p(&[1, 8, 34, 24, 6]));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(s1_closed(1, S1Form::Squares), p(&[1, 2, 2]));
        assert_eq!(s1_closed(0, S1Form::Trinomial), p(&[1]));
        assert_eq!(s1_closed(3, S1Form::Squares), s_poly_direct(1, 3));
        assert_eq!(s1_closed(3, S1Form::Trinomial), s_poly_direct(1, 3));
    }

    #[test]
    fn recurrence_sequence() {
        assert_eq!(s1_recurrence_sequence(1, &rat(1, 1)), vec![rat(1, 1), rat(5, 1)]);
        assert_eq!(s1_recurrence_sequence(2, &rat(0, 1)), vec![rat(1, 1); 3]);
        let x = rat(2, 3);
        let seq = s1_recurrence_sequence(10, &x);
        assert_eq!(seq.len(), 11);
        for (n, v) in seq.iter().enumerate() {
            assert_eq!(*v, s_poly_direct(1, n).eval_rational(&x));
        }
        assert!(s1_recurrence_residual(5).is_zero());
    }

    #[test]
    fn trinomial_values() {
        let ints = |b: i64, c: i64| TrinomialParams {
            b: BigInt::from(b),
            c: BigInt::from(c),
        };
        assert_eq!(trinomial_t(0, &ints(5, 7)), BigInt::one());
        assert_eq!(trinomial_t(1, &ints(5, 7)), BigInt::from(5));
        assert_eq!(trinomial_t(2, &ints(3, 2)), BigInt::from(13));
        let central: Vec<BigInt> = (0..6).map(|n| trinomial_t(n, &ints(1, 1))).collect();
        assert_eq!(central, [1, 1, 3, 7, 19, 51].map(BigInt::from).to_vec());
        for n in 0..8 {
            assert_eq!(
                trinomial_t(n, &ints(2, 1)),
                binomial(2 * n as u64, n as i64)
            );
        }
    }

    #[test]
    fn trinomial_recurrence_variants() {
        let std = trinomial_recurrence_check(10, 1, 1, TrinomialVariant::Standard);
        assert!(std.holds);
        assert!(trinomial_recurrence_check(5, 2, 1, TrinomialVariant::Standard).holds);
        let printed = trinomial_recurrence_check(5, 1, 1, TrinomialVariant::Printed);
        assert!(!printed.holds);
        assert!(printed.first_failure.is_some());
    }

    #[test]
    fn apery_values() {
        assert_eq!(apery(0), BigInt::from(1));
        assert_eq!(apery(1), BigInt::from(5));
        assert_eq!(apery(2), BigInt::from(73));
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre_p(7, &rat(1, 1)), rat(1, 1));
        assert_eq!(legendre_p(1, &rat(5, 3)), rat(5, 3));
        assert_eq!(legendre_p(2, &rat(3, 1)), rat(13, 1));
        // closed form (3z^2 - 1)/2
        let z = rat(-4, 7);
        assert_eq!(legendre_p(2, &z), (rat(3, 1) * &z * &z - rat(1, 1)) / rat(2, 1));
    }

    #[test]
    fn modular_family_matches_exact() {
        let fam = ModularFamily::new(12, 169);
        for n in 0..=12 {
            let exact = s_poly_direct(2, n).reduce_mod(169);
            let modular = crate::ResiduePolynomial::new(fam.s_coeffs(2, n), 169);
            assert_eq!(exact, modular);
        }
    }
}
