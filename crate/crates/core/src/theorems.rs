//! Executable checks of the proved statements about `S_n^(0)`, `S_n^(1)` and
//! the auxiliary lemmas on central binomials and trinomial coefficients.
//!
//! Congruences "modulo `p Z_p[x]`" are checked coefficientwise modulo `p`
//! after the relevant sums have been divided by `p` exactly.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::arith::{big_mod, inverse_mod, mul_mod, pow_mod};
use crate::exactmath::{binomial, jacobi, reduce_mod, rat, Residue, ResiduePolynomial};
use crate::polyfamily::{s_poly, trinomial_t, ModularFamily, TrinomialParams};
use crate::report::TheoremReport;
use crate::{IntPolynomial, RatPolynomial};

/// `g` with `f(x) = g(x^2 + x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPolynomial {
    pub g: RatPolynomial,
}

impl UPolynomial {
    pub fn is_integral(&self) -> bool {
        self.g.coeffs().iter().all(|c| c.is_integer())
    }

    /// `g(x^2 + x)`.
    pub fn reconstruct(&self) -> RatPolynomial {
        self.g.compose(&RatPolynomial::from_i64s(&[0, 1, 1]))
    }
}

/// Rewrites `f` as a polynomial in `u = x(x+1)` by peeling leading terms.
pub fn rewrite_in_u(f: &RatPolynomial) -> Result<UPolynomial> {
    let Some(deg) = f.degree() else {
        return Ok(UPolynomial {
            g: RatPolynomial::zero(),
        });
    };
    if deg % 2 == 1 {
        return Err(Error::NotInU { degree: deg });
    }
    let u = RatPolynomial::from_i64s(&[0, 1, 1]);
    let mut g = vec![crate::ExactRational::zero(); deg / 2 + 1];
    let mut rest = f.clone();
    while let Some(d) = rest.degree() {
        if d % 2 == 1 {
            return Err(Error::NotInU { degree: d });
        }
        let lc = rest.leading().expect("nonzero").clone();
        rest = &rest - &u.pow((d / 2) as u32).scale(&lc);
        g[d / 2] = lc;
    }
    Ok(UPolynomial {
        g: RatPolynomial::new(g),
    })
}

fn timed(mut report: TheoremReport, start: Instant) -> TheoremReport {
    report.elapsed = start.elapsed();
    report
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !crate::exactmath::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// `sum_{k<p} S_k^(0)(x)` reduced mod p, as a polynomial.
fn s0_sum_mod_p(p: u64) -> ResiduePolynomial {
    let fam = ModularFamily::new(p as usize, p);
    let mut total = ResiduePolynomial::zero(p);
    for k in 0..p as usize {
        let term = ResiduePolynomial::new(fam.s_coeffs(0, k), p);
        total = total.add(&term).expect("same modulus");
    }
    total
}

/// `sum_{k<p} S_k^(0)(x) ≡ x/(2x-1) (1 + ((1-4x^2)/p))` for `2x ≢ 1`, and
/// `≡ -δ_{p,3}` when `2x ≡ 1`, for every residue `x`.
pub fn verify_thm12(p: u64) -> Result<TheoremReport> {
    require_odd_prime(p)?;
    let start = Instant::now();
    let mut report = TheoremReport::new("thm-s0-sum", format!("p={p}, x=0..{}", p - 1));
    let sum = s0_sum_mod_p(p);
    for x in 0..p {
        let lhs = sum.eval(&Residue::new(x, p))?.value();
        let two_x_minus_one = (2 * x + p - 1) % p;
        let rhs = if two_x_minus_one == 0 {
            if p == 3 {
                p - 1
            } else {
                0
            }
        } else {
            let xi = x as i64;
            let sym = jacobi(1 - 4 * xi * xi, p as i64)?;
            let inv = inverse_mod(two_x_minus_one, p).expect("nonzero mod p");
            let factor = (1 + sym + p as i32) as u64 % p;
            mul_mod(mul_mod(x, inv, p), factor, p)
        };
        if lhs != rhs {
            report.fail(format!("p={p} x={x}: lhs={lhs} rhs={rhs}"));
        }
    }
    Ok(timed(report, start))
}

/// The two specializations at `x = -1/2` and `x = 2`; the second needs `p > 3`.
pub fn verify_corollary12(p: u64) -> Result<TheoremReport> {
    require_odd_prime(p)?;
    let start = Instant::now();
    let mut report = TheoremReport::new("cor-s0-sum", format!("p={p}"));
    let sum = s0_sum_mod_p(p);

    let x = reduce_mod(&rat(-1, 2), p)?;
    let lhs = sum.eval(&x)?;
    let rhs = reduce_mod(&rat(1, 4), p)?;
    if lhs != rhs {
        report.fail(format!("p={p} x=-1/2: lhs={} rhs={}", lhs.value(), rhs.value()));
    }

    let lhs = sum.eval(&Residue::new(2, p))?;
    let sym = jacobi(p as i64, 3)? * jacobi(p as i64, 5)?;
    let rhs = reduce_mod(&(rat(2, 3) * rat(1 + sym as i64, 1)), p)?;
    if lhs != rhs {
        report.fail(format!("p={p} x=2: lhs={} rhs={}", lhs.value(), rhs.value()));
    }
    Ok(timed(report, start))
}

fn s1_sums(n: usize) -> (IntPolynomial, IntPolynomial) {
    let mut plain = IntPolynomial::zero();
    let mut weighted = IntPolynomial::zero();
    for k in 0..n {
        let s = s_poly(1, k);
        plain = &plain + &s;
        weighted = &weighted + &s.scale(&BigInt::from(k));
    }
    (plain, weighted)
}

/// `(1/n) sum_{k<n} S_k^(1)` and `((6,n)/n) sum_{k<n} k S_k^(1)` lie in `Z[x(x+1)]`.
pub fn verify_thm13_membership(n: usize) -> Result<TheoremReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let start = Instant::now();
    let mut report = TheoremReport::new("thm-s1-membership", format!("n={n}"));
    let (plain, weighted) = s1_sums(n);
    let g6 = BigInt::from(n.gcd(&6));
    let checks = [
        ("(1/n)sum", plain.to_rational().scale(&crate::ExactRational::new(1.into(), n.into()))),
        (
            "((6,n)/n)sum k",
            weighted
                .to_rational()
                .scale(&crate::ExactRational::new(g6, n.into())),
        ),
    ];
    for (label, f) in checks {
        match rewrite_in_u(&f) {
            Ok(g) if g.is_integral() => {}
            Ok(g) => report.fail(format!("n={n} {label}: g(u) has non-integral coefficients {:?}", g.g)),
            Err(e) => report.fail(format!("n={n} {label}: {e}")),
        }
    }
    Ok(timed(report, start))
}

/// `(1/p) sum_{k<p} S_k^(1)(x) ≡ 1 - (x^(p-1) - 1)((x+1)^(p-1) - 1)` mod p.
pub fn verify_thm13_modp(p: u64) -> Result<TheoremReport> {
    require_odd_prime(p)?;
    let start = Instant::now();
    let mut report = TheoremReport::new("thm-s1-modp", format!("p={p}"));
    let (plain, _) = s1_sums(p as usize);
    let quotient = plain
        .div_exact(&BigInt::from(p))
        .ok_or_else(|| Error::InexactDivision(format!("sum_(k<{p}) S_k^(1) not divisible by {p}")))?;
    let lhs = quotient.reduce_mod(p);
    let xm = ResiduePolynomial::from_i64s(&[-1], p)
        .add(&ResiduePolynomial::from_i64s(&[0, 1], p).pow(p - 1))?;
    let xp = ResiduePolynomial::from_i64s(&[-1], p)
        .add(&ResiduePolynomial::from_i64s(&[1, 1], p).pow(p - 1))?;
    let rhs = ResiduePolynomial::from_i64s(&[1], p).sub(&xm.mul(&xp)?)?;
    if lhs != rhs {
        report.fail(format!("p={p}: lhs={lhs:?} rhs={rhs:?}"));
    }
    Ok(timed(report, start))
}

/// Cleared-denominator form of the closing congruence for
/// `(3/p) sum_{k<p} k S_k^(1)(x)` in `F_p[x]`, `p > 3`.
pub fn verify_sec3_ksum(p: u64) -> Result<TheoremReport> {
    require_odd_prime(p)?;
    if p <= 3 {
        return Err(Error::InvalidArgument("needs p > 3".into()));
    }
    let start = Instant::now();
    let mut report = TheoremReport::new("s1-ksum-modp", format!("p={p}"));
    let (_, weighted) = s1_sums(p as usize);
    let quotient = weighted
        .div_exact(&BigInt::from(p))
        .ok_or_else(|| Error::InexactDivision(format!("sum_(k<{p}) k S_k^(1) not divisible by {p}")))?;
    let l = quotient.scale(&BigInt::from(3)).reduce_mod(p);

    let rp = |c: &[i64]| ResiduePolynomial::from_i64s(c, p);
    // 4 x^2 (x+1)^2
    let denom = rp(&[0, 0, 4]).mul(&rp(&[1, 2, 1]))?;
    let lhs = denom.mul(&l)?;
    let rhs = rp(&[1, 2])
        .pow(p + 3)
        .neg()
        .add(&rp(&[1, 6, 6]).mul(&rp(&[1, 2, 2]).pow(p))?)?;
    if lhs != rhs {
        report.fail(format!("p={p}: lhs={lhs:?} rhs={rhs:?}"));
    }
    let by_x2 = rhs.rem_monic(&rp(&[0, 0, 1]))?;
    let by_x1_2 = rhs.rem_monic(&rp(&[1, 2, 1]))?;
    if !by_x2.is_zero() || !by_x1_2.is_zero() {
        report.fail(format!("p={p}: numerator not divisible by x^2 (x+1)^2"));
    }
    Ok(timed(report, start))
}

/// `sum_{k<=(p-1)/2} C(2k,k) x^k ≡ (1-4x)^((p-1)/2)` and
/// `sum k C(2k,k) x^k ≡ 2x (1-4x)^((p-3)/2)` in `F_p[x]`.
pub fn verify_lemma21(p: u64) -> Result<TheoremReport> {
    require_odd_prime(p)?;
    let start = Instant::now();
    let mut report = TheoremReport::new("lemma-central-binomial-sums", format!("p={p}"));
    let h = ((p - 1) / 2) as usize;
    let central: Vec<BigInt> = (0..=h).map(|k| binomial(2 * k as u64, k as i64)).collect();
    let lhs1 = ResiduePolynomial::from_bigints(&central, p);
    let weighted: Vec<BigInt> = central
        .iter()
        .enumerate()
        .map(|(k, c)| c * BigInt::from(k))
        .collect();
    let lhs2 = ResiduePolynomial::from_bigints(&weighted, p);
    let base = ResiduePolynomial::from_i64s(&[1, -4], p);
    let rhs1 = base.pow(h as u64);
    let rhs2 = ResiduePolynomial::from_i64s(&[0, 2], p).mul(&base.pow((p - 3) / 2))?;
    if lhs1 != rhs1 {
        report.fail(format!("p={p} first: lhs={lhs1:?} rhs={rhs1:?}"));
    }
    if lhs2 != rhs2 {
        report.fail(format!("p={p} second: lhs={lhs2:?} rhs={rhs2:?}"));
    }
    Ok(timed(report, start))
}

/// `(2/k) sum_{k/2 <= i <= k} i C(k,i) = 2^(k-1) + C(2⌊k/2⌋, ⌊k/2⌋)` for `1 <= k <= k_max`.
pub fn verify_lemma_ki(k_max: u64) -> TheoremReport {
    let start = Instant::now();
    let mut report = TheoremReport::new("lemma-half-binomial-sum", format!("k=1..{k_max}"));
    for k in 1..=k_max {
        let sum: BigInt = (0..=k)
            .filter(|i| 2 * i >= k)
            .map(|i| BigInt::from(i) * binomial(k, i as i64))
            .sum();
        let h = k / 2;
        let rhs = (BigInt::one() << (k - 1)) + binomial(2 * h, h as i64);
        if BigInt::from(2) * &sum != BigInt::from(k) * &rhs {
            report.fail(format!("k={k}: 2*sum={} k*rhs={}", BigInt::from(2) * &sum, BigInt::from(k) * &rhs));
        }
    }
    timed(report, start)
}

/// `S_n^(1)(x) = T_n(2x^2+2x+1, x^2(x+1)^2)` and it lies in `Z[x(x+1)]`.
pub fn verify_lemma_st(n_max: usize) -> TheoremReport {
    let start = Instant::now();
    let mut report = TheoremReport::new("lemma-s1-trinomial", format!("n=0..{n_max}"));
    let params = TrinomialParams {
        b: IntPolynomial::from_i64s(&[1, 2, 2]),
        c: IntPolynomial::from_i64s(&[0, 0, 1, 2, 1]),
    };
    for n in 0..=n_max {
        let s = s_poly(1, n);
        let t = trinomial_t(n, &params);
        if *s != t {
            report.fail(format!("n={n}: S={s} T={t}"));
        }
        match rewrite_in_u(&s.to_rational()) {
            Ok(g) if g.is_integral() => {}
            _ => report.fail(format!("n={n}: S_n^(1) not in Z[x(x+1)]")),
        }
    }
    timed(report, start)
}

/// Readings of the second trinomial-sum identity that are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Reading {
    final_c_squared: bool,
    weight_both: bool,
}

impl Reading {
    const ALL: [Reading; 4] = [
        Reading { final_c_squared: true, weight_both: true },
        Reading { final_c_squared: false, weight_both: true },
        Reading { final_c_squared: true, weight_both: false },
        Reading { final_c_squared: false, weight_both: false },
    ];

    fn label(&self) -> &'static str {
        match (self.final_c_squared, self.weight_both) {
            (true, true) => "T_{n-1}(b,c^2), weight on both sums",
            (false, true) => "T_{n-1}(b,c), weight on both sums",
            (true, false) => "T_{n-1}(b,c^2), weight on first sum only",
            (false, false) => "T_{n-1}(b,c), weight on first sum only",
        }
    }
}

/// The two trinomial-sum identities in `(b, c)`, checked on an integer grid
/// larger than their degree bounds. The second identity is evaluated under
/// each of its readings and the note records which ones hold.
pub fn verify_lemma_2c_12c2(n_max: usize) -> TheoremReport {
    let start = Instant::now();
    let mut report = TheoremReport::new("lemma-trinomial-sums", format!("n=1..{n_max}"));
    let mut holds = [true; 4];
    for n in 1..=n_max {
        let nb = BigInt::from(n);
        for b in 0..=(n as i64 + 1) {
            for c in 0..=(2 * n as i64 + 2) {
                let (bb, cb) = (BigInt::from(b), BigInt::from(c));
                let sq = TrinomialParams { b: bb.clone(), c: &cb * &cb };
                let lin = TrinomialParams { b: bb.clone(), c: cb.clone() };
                let t: Vec<BigInt> = (0..=n).map(|k| trinomial_t(k, &sq)).collect();
                let two = BigInt::from(2);
                let w: BigInt = &bb - &two * &cb;
                let mut s_weighted = BigInt::zero();
                let mut s_k_weighted = BigInt::zero();
                let mut s_plain = BigInt::zero();
                for (k, tk) in t.iter().take(n).enumerate() {
                    let wk = num_traits::pow(w.clone(), n - 1 - k);
                    s_weighted += tk * &wk;
                    s_k_weighted += BigInt::from(k) * tk * &wk;
                    s_plain += tk;
                }
                // identity one, multiplied through by n
                let lhs = &two * &cb * &s_weighted;
                let rhs = &nb * (-&t[n] + (&bb + &two * &cb) * &t[n - 1]);
                if lhs != rhs {
                    report.fail(format!("first identity n={n} b={b} c={c}: {lhs} vs {rhs}"));
                }
                for (slot, r) in holds.iter_mut().zip(Reading::ALL) {
                    let second = if r.weight_both { &s_weighted } else { &s_plain };
                    let c2: BigInt = &cb * &cb;
                    let lhs = BigInt::from(12) * &c2 * &s_k_weighted - &nb * BigInt::from(4) * &c2 * second;
                    let t_last = if r.final_c_squared {
                        t[n - 1].clone()
                    } else {
                        trinomial_t(n - 1, &lin)
                    };
                    let b2c: BigInt = &bb + &two * &cb;
                    let rhs = &nb * ((&bb + BigInt::from(4) * &cb) * &t[n] - &b2c * &b2c * t_last);
                    if lhs != rhs {
                        *slot = false;
                    }
                }
            }
        }
    }
    if !holds[0] {
        report.fail("second identity fails under the c^2 / weight-on-both reading");
    }
    let valid: Vec<&str> = Reading::ALL
        .iter()
        .zip(holds)
        .filter(|(_, h)| *h)
        .map(|(r, _)| r.label())
        .collect();
    let note = if valid.is_empty() {
        "second identity: no reading holds".to_string()
    } else {
        format!("second identity holds for: {}", valid.join(" | "))
    };
    timed(report, start).with_note(note)
}

/// `C(2k,k) ≡ (-4)^k C((p-1)/2, k)` mod p for `k <= (p-1)/2`.
pub fn verify_minushalf_binom(p: u64) -> Result<TheoremReport> {
    require_odd_prime(p)?;
    let start = Instant::now();
    let mut report = TheoremReport::new("central-binomial-mod-p", format!("p={p}"));
    let h = (p - 1) / 2;
    for k in 0..=h {
        let lhs = big_mod(&binomial(2 * k, k as i64), p);
        let sign = pow_mod(p - 4 % p, k, p);
        let rhs = mul_mod(sign, big_mod(&binomial(h, k as i64), p), p);
        if lhs != rhs {
            report.fail(format!("p={p} k={k}: {lhs} vs {rhs}"));
        }
    }
    Ok(timed(report, start))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(c: &[i64]) -> RatPolynomial {
        RatPolynomial::from_i64s(c)
    }

    #[test]
    fn u_rewrite_examples() {
        assert_eq!(rewrite_in_u(&rp(&[1, 1, 1])).unwrap().g, rp(&[1, 1]));
        assert_eq!(rewrite_in_u(&rp(&[7])).unwrap().g, rp(&[7]));
        assert_eq!(rewrite_in_u(&rp(&[0, 0, 0, 1])), Err(Error::NotInU { degree: 3 }));
        // x^2 alone is not a polynomial in x^2 + x
        assert_eq!(rewrite_in_u(&rp(&[0, 0, 1])), Err(Error::NotInU { degree: 1 }));
    }

    #[test]
    fn thm12_examples() {
        // S_k^(0)(1) = C(2k+2,k+1) - 1: 1 + 5 + 19 + 69 + 251 = 345 ≡ 0 mod 5
        let total: i64 = (0..5).map(|k| {
            let c = binomial(2 * k + 2, k as i64 + 1);
            num_traits::ToPrimitive::to_i64(&c).unwrap() - 1
        }).sum();
        assert_eq!(total, 345);
        let sum = s0_sum_mod_p(5);
        assert_eq!(sum.eval(&Residue::new(1, 5)).unwrap().value(), 0);
        // p = 3, x = 2: 1 + 13 + 165 = 179 ≡ 2
        let sum3 = s0_sum_mod_p(3);
        assert_eq!(sum3.eval(&Residue::new(2, 3)).unwrap().value(), 2);
        assert!(verify_thm12(3).unwrap().passed());
        assert!(verify_thm12(5).unwrap().passed());
        assert!(verify_thm12(7).unwrap().passed());
        assert!(verify_thm12(9).is_err());
    }

    #[test]
    fn corollary_examples() {
        assert!(verify_corollary12(5).unwrap().passed());
        assert!(verify_corollary12(7).unwrap().passed());
        assert!(verify_corollary12(11).unwrap().passed());
        assert!(matches!(
            verify_corollary12(3),
            Err(Error::NonInvertibleDenominator { .. })
        ));
    }

    #[test]
    fn thm13_examples() {
        assert!(verify_thm13_membership(1).unwrap().passed());
        assert!(verify_thm13_membership(2).unwrap().passed());
        let (plain, _) = s1_sums(2);
        assert_eq!(plain, IntPolynomial::from_i64s(&[2, 2, 2]));
        assert!(verify_thm13_modp(3).unwrap().passed());
        assert!(verify_thm13_modp(5).unwrap().passed());
        assert!(verify_sec3_ksum(5).unwrap().passed());
        assert!(verify_sec3_ksum(7).unwrap().passed());
        assert!(verify_sec3_ksum(3).is_err());
    }

    #[test]
    fn lemma_examples() {
        assert!(verify_lemma21(3).unwrap().passed());
        assert!(verify_lemma21(5).unwrap().passed());
        assert!(verify_lemma_ki(2).passed());
        assert!(verify_lemma_st(3).passed());
        let r = verify_lemma_2c_12c2(3);
        assert!(r.passed(), "{r:?}");
        let note = r.note.unwrap();
        assert!(note.contains("T_{n-1}(b,c^2), weight on both sums"));
        assert!(!note.contains("T_{n-1}(b,c), weight on both sums"));
        assert!(verify_minushalf_binom(3).unwrap().passed());
        assert!(verify_minushalf_binom(13).unwrap().passed());
    }
}
