//! Randomized invariants shared by the property tests and the acceptance run.
//! Every property runs `CASES` cases from a fixed ChaCha seed.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use polyfam::conjectures::{
    builtin_registry, normalize_rep, solve_rep, symmetry_audit, CheckKind, Expr,
};
use polyfam::exactmath::{
    jacobi, padic_valuation, primes_up_to, reduce_mod, PadicValuation,
};
use polyfam::polyfamily::{s_poly_direct, s_poly_sumsq};
use polyfam::qconvex::{qlc_scan, qlc_triple, PolySequenceFamily};
use polyfam::series::{
    pi_highprec, series_partial_sum, tail_estimate, HighPrecisionReal, QuadraticNumber,
    SeriesTarget, BURN_IN, RATIO_WINDOW,
};
use polyfam::theorems::rewrite_in_u;
use polyfam::{ExactRational, IntPolynomial, RatPolynomial};

pub const CASES: u32 = 1000;
const SEED: [u8; 32] = *b"polyfam-fixed-property-seed-0001";

pub type Property = (&'static str, fn() -> Result<(), String>);

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::from_seed(RngAlgorithm::ChaCha, &SEED),
    )
}

fn run<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(CASES).run(&strategy, test).map_err(|e| e.to_string())
}

fn rational(num: std::ops::RangeInclusive<i64>, den: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = ExactRational> {
    (num, den).prop_map(|(n, d)| ExactRational::new(n.into(), d.into()))
}

fn odd_modulus() -> impl Strategy<Value = i64> {
    (0i64..500).prop_map(|k| 2 * k + 1)
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(primes_up_to(97))
}

fn int_poly(max_len: usize) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-1000i64..=1000, 0..=max_len).prop_map(|c| IntPolynomial::from_i64s(&c))
}

pub fn jacobi_multiplicative() -> Result<(), String> {
    run((-10_000i64..10_000, -10_000i64..10_000, odd_modulus()), |(a, b, n)| {
        let ja = jacobi(a, n).unwrap();
        let jb = jacobi(b, n).unwrap();
        prop_assert_eq!(jacobi(a * b, n).unwrap(), ja * jb);
        prop_assert_eq!(jacobi(a + n, n).unwrap(), ja);
        Ok(())
    })
}

pub fn jacobi_euler_criterion() -> Result<(), String> {
    let pair = small_prime()
        .prop_filter("odd", |&p| p > 2)
        .prop_flat_map(|p| (Just(p), 1..p));
    run(pair, |(p, a)| {
        let e = polyfam::exactmath::arith::pow_mod(a, (p - 1) / 2, p);
        let j = jacobi(a as i64, p as i64).unwrap();
        let expected = if e == 1 { 1 } else { -1 };
        prop_assert_eq!(j, expected);
        Ok(())
    })
}

pub fn reduce_mod_homomorphism() -> Result<(), String> {
    let m = prop::sample::select(vec![9u64, 25, 49, 121, 169, 289, 7, 11, 13]);
    run((rational(-5000..=5000, 1..=400), rational(-5000..=5000, 1..=400), m), |(a, b, m)| {
        let (Ok(ra), Ok(rb)) = (reduce_mod(&a, m), reduce_mod(&b, m)) else {
            return Ok(());
        };
        prop_assert_eq!(reduce_mod(&(&a + &b), m).unwrap(), ra.add(&rb).unwrap());
        prop_assert_eq!(reduce_mod(&(&a * &b), m).unwrap(), ra.mul(&rb).unwrap());
        Ok(())
    })
}

pub fn valuation_laws() -> Result<(), String> {
    run((rational(-100_000..=100_000, 1..=5000), rational(-100_000..=100_000, 1..=5000), small_prime()), |(a, b, p)| {
        let (va, vb) = (padic_valuation(&a, p), padic_valuation(&b, p));
        let prod = padic_valuation(&(&a * &b), p);
        match (va, vb) {
            (PadicValuation::Finite(x), PadicValuation::Finite(y)) => {
                prop_assert_eq!(prod, PadicValuation::Finite(x + y))
            }
            _ => prop_assert_eq!(prod, PadicValuation::Infinite),
        }
        prop_assert!(padic_valuation(&(&a + &b), p) >= va.min(vb));
        Ok(())
    })
}

pub fn polynomial_ring_laws() -> Result<(), String> {
    run((int_poly(31), int_poly(31), int_poly(31)), |(a, b, c)| {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        Ok(())
    })
}

pub fn sum_of_squares_pointwise() -> Result<(), String> {
    run((0u32..=3, 0usize..=12, rational(-30..=30, 1..=20)), |(m, n, x)| {
        let lhs = s_poly_direct(m, n).eval_rational(&x);
        let rhs = s_poly_sumsq(m, n).eval_rational(&x);
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

pub fn qlc_self_triple() -> Result<(), String> {
    run(int_poly(20), |p| {
        prop_assert!(qlc_triple(&p, &p, &p).is_pass());
        Ok(())
    })
}

pub fn qlc_scan_chunking() -> Result<(), String> {
    let families = prop::sample::select(vec![
        PolySequenceFamily::S { m: 1, start: 0 },
        PolySequenceFamily::S { m: 2, start: 0 },
        PolySequenceFamily::BinomCubed { start: 0 },
        PolySequenceFamily::Beta { start: 0 },
        PolySequenceFamily::ShiftedBinom { m: 2, start: 0 },
    ]);
    run((families, 1usize..=10, 0usize..=10), |(f, lo, len)| {
        let hi = lo + len;
        let whole = qlc_scan(f, lo, hi);
        let mid = lo + len / 2;
        let mut parts = qlc_scan(f, lo, mid);
        parts.extend(qlc_scan(f, mid + 1, hi));
        prop_assert_eq!(whole, parts);
        Ok(())
    })
}

pub fn u_rewrite_round_trip() -> Result<(), String> {
    let coeffs = prop::collection::vec(rational(-200..=200, 1..=12), 0..=8);
    run(coeffs, |c| {
        let g = RatPolynomial::new(c);
        let f = g.compose(&RatPolynomial::from_i64s(&[0, 1, 1]));
        let u = rewrite_in_u(&f).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&u.g, &g);
        prop_assert_eq!(u.reconstruct(), f.clone());
        // A polynomial of odd degree is never in Q[x(x+1)].
        let odd = &f * &RatPolynomial::x();
        if !f.is_zero() {
            prop_assert!(rewrite_in_u(&odd).is_err());
        }
        Ok(())
    })
}

pub fn rep_normalization_symmetry() -> Result<(), String> {
    let specs: Vec<_> = builtin_registry()
        .into_iter()
        .filter(|s| s.kind == CheckKind::RepCongruence)
        .collect();
    let primes: Vec<u64> = primes_up_to(499).into_iter().filter(|&p| p > 2).collect();
    run((prop::sample::select(specs), prop::sample::select(primes)), |(spec, p)| {
        let ok = symmetry_audit(&spec, p).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(ok, "{} at p={}", spec.id, p);
        let rule = spec.rule.as_ref().unwrap();
        for case in &rule.cases {
            if let Some(rep) = solve_rep(case.target_multiple * p, case.a, case.d) {
                prop_assert!(rep.holds());
                if let Ok(n) = normalize_rep(rep, case.norm) {
                    prop_assert!(n.holds());
                    prop_assert!(case.norm.satisfied(n.x, n.y));
                }
            }
        }
        Ok(())
    })
}

pub fn expr_display_round_trip() -> Result<(), String> {
    let atoms = prop::sample::select(vec!["p", "x", "y", "3", "-2", "7/4"]);
    let ops = prop::sample::select(vec!["+", "-", "*"]);
    run((prop::collection::vec((ops, atoms.clone(), atoms), 1..6), -50i64..50, -50i64..50), |(parts, x, y)| {
        let mut src = "1".to_string();
        for (op, a, b) in parts {
            src = format!("({op} {src} ({op} {a} {b}))");
        }
        let e = Expr::parse(&src).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let again = Expr::parse(&e.to_string()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&e, &again);
        let env = polyfam::conjectures::Env {
            p: Some(7),
            n: None,
            x: Some(x),
            y: Some(y),
        };
        prop_assert_eq!(e.eval_num(&env).unwrap(), again.eval_num(&env).unwrap());
        Ok(())
    })
}

pub fn interval_soundness() -> Result<(), String> {
    let q = || rational(-10_000..=10_000, 1..=997);
    run((q(), q(), q(), 0u32..=30), |(a, b, c, scale)| {
        let ia = HighPrecisionReal::from_rational(&a, scale);
        let ib = HighPrecisionReal::from_rational(&b, scale);
        let ic = HighPrecisionReal::from_rational(&c, scale);
        let composed = ia.add(&ib).mul(&ic).sub(&ia.mul(&ib));
        let exact = (&a + &b) * &c - &a * &b;
        prop_assert!(composed.contains(&exact));
        if !ic.contains_zero() {
            let q = ia.sub(&ib).div(&ic).unwrap();
            prop_assert!(q.contains(&((&a - &b) / &c)));
        }
        let r = composed.rescale(scale / 2);
        prop_assert!(r.contains(&exact));
        Ok(())
    })
}

pub fn pi_nested() -> Result<(), String> {
    run((1u32..=60, 1u32..=60), |(d1, d2)| {
        let (a, b) = (pi_highprec(d1), pi_highprec(d2));
        prop_assert!(a.overlaps(&b));
        let lo = d1.min(d2) as i64;
        prop_assert!(a.agreed_digits(&b) >= lo);
        Ok(())
    })
}

pub fn sato_partial_sums_exact() -> Result<(), String> {
    let t = SeriesTarget::sato();
    run((0usize..=25, 10u32..=40), |(n, scale)| {
        let exact = series_partial_sum(&t, n);
        let q = exact.as_quadratic().unwrap().clone();
        // Independent enclosure: interval sum of interval terms.
        let mut acc = HighPrecisionReal::from_rational(&ExactRational::zero(), scale);
        let base = QuadraticNumber::from_ints(161, -72);
        let mut power = QuadraticNumber::one();
        for k in 0..=n {
            let w = QuadraticNumber::from_ints(20 * k as i64 + 10, -3);
            let a_k = ExactRational::from_integer(polyfam::polyfamily::apery(k));
            acc = acc.add(&w.mul(&power).scale(&a_k).to_interval(scale + 5));
            power = power.mul(&base);
        }
        // The exact image, enclosed independently, must meet the accumulated enclosure.
        prop_assert!(acc.overlaps(&q.to_interval(scale + 5)));
        prop_assert!(acc.agreed_digits(&q.to_interval(scale + 5)) >= scale as i64);
        Ok(())
    })
}

pub fn tail_bound_shrinks() -> Result<(), String> {
    let targets = prop::sample::select(SeriesTarget::builtin());
    run((targets, BURN_IN + RATIO_WINDOW..=60), |(t, n)| {
        let a = tail_estimate(&t, n).unwrap();
        let b = tail_estimate(&t, n + 10).unwrap();
        prop_assert!(b.log10_bound < a.log10_bound, "{} N={}", t.id, n);
        Ok(())
    })
}

pub fn big_binomial_symmetry() -> Result<(), String> {
    run((0u64..=200, 0i64..=200), |(n, k)| {
        let lhs = polyfam::exactmath::binomial(n, k);
        if k > n as i64 {
            prop_assert!(lhs.is_zero());
        } else {
            prop_assert_eq!(&lhs, &polyfam::exactmath::binomial(n, n as i64 - k));
            prop_assert!(lhs >= BigInt::one());
        }
        Ok(())
    })
}

/// Every property, in a fixed order.
pub fn all() -> Vec<Property> {
    vec![
        ("jacobi multiplicativity and periodicity", jacobi_multiplicative),
        ("jacobi Euler criterion", jacobi_euler_criterion),
        ("reduce_mod ring homomorphism", reduce_mod_homomorphism),
        ("p-adic valuation laws", valuation_laws),
        ("polynomial ring laws", polynomial_ring_laws),
        ("binomial symmetry", big_binomial_symmetry),
        ("sum-of-squares form pointwise", sum_of_squares_pointwise),
        ("q-log-convex self triple", qlc_self_triple),
        ("q-log-convex scan chunking", qlc_scan_chunking),
        ("u-rewrite round trip", u_rewrite_round_trip),
        ("rep normalization symmetry audit", rep_normalization_symmetry),
        ("expression display round trip", expr_display_round_trip),
        ("interval soundness", interval_soundness),
        ("pi enclosures nested", pi_nested),
        ("golden-ratio partial sums exact", sato_partial_sums_exact),
        ("tail bound shrinks", tail_bound_shrinks),
    ]
}
