//! Acceptance run: nine criteria, one PASS/FAIL line each. Exits nonzero
//! when any criterion fails.

mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use polyfam::conjectures::{
    applicability, builtin_registry, exact_sum_reduced, weighted_sum_mod, CheckKind,
};
use polyfam::exactmath::primes_up_to;
use polyfam::polyfamily::s_poly_direct;
use polyfam::report::{CheckRecord, Verdict};
use polyfam::series::{evaluate_and_compare, SeriesTarget};
use polyfam::suites::{self, SuiteConfig};

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Outcome {
            ok,
            detail: detail.into(),
        }
    }
}

/// `C(n, k)` by the multiplicative formula, independent of the library tables.
fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn apery_oracle(n: u64) -> BigInt {
    (0..=n)
        .map(|k| {
            let t = binom(n, k) * binom(n + k, k);
            &t * &t
        })
        .sum()
}

fn failures(records: &[CheckRecord]) -> Vec<&CheckRecord> {
    records.iter().filter(|r| r.verdict == Verdict::Fail).collect()
}

fn describe_failures(records: &[CheckRecord]) -> String {
    let f = failures(records);
    let mut s = format!("{} failing checks", f.len());
    for r in f.iter().take(5) {
        s.push_str(&format!("\n      {} {} {}: {}", r.suite, r.id, r.params, r.detail));
    }
    if f.len() > 5 {
        s.push_str(&format!("\n      ... {} more", f.len() - 5));
    }
    s
}

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("runtime {elapsed:.2?} exceeds {limit:?}"))
    }
}

fn criterion_1() -> Outcome {
    let golden: [i64; 10] = [1, 1, 9, 73, 361, 5001, 35001, 348489, 3693033, 31360681];
    let start = Instant::now();
    let bad: Vec<usize> = (0..10)
        .filter(|&k| s_poly_direct(2, k).eval(&BigInt::from(-1)) != BigInt::from(golden[k]))
        .collect();
    let t = start.elapsed();
    match within(Duration::from_secs(1), t) {
        Err(e) => Outcome::new(false, e),
        Ok(()) => Outcome::new(bad.is_empty(), format!("S_k^(2)(-1), k=0..9, mismatches {bad:?}, {t:.2?}")),
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 0..=60u64 {
        let at_one = |m: u32| -> BigInt { s_poly_direct(m, n as usize).coeffs().iter().sum() };
        if at_one(2) != apery_oracle(n) {
            bad.push(format!("m=2 n={n}"));
        }
        if at_one(0) != binom(2 * n + 2, n + 1) - 1 {
            bad.push(format!("m=0 n={n}"));
        }
    }
    let t = start.elapsed();
    if let Err(e) = within(Duration::from_secs(10), t) {
        return Outcome::new(false, e);
    }
    Outcome::new(bad.is_empty(), format!("n<=60, mismatches {bad:?}, {t:.2?}"))
}

fn suite_criterion(limit: Duration, run: impl FnOnce() -> Vec<CheckRecord>, label: &str) -> Outcome {
    let start = Instant::now();
    let records = run();
    let t = start.elapsed();
    if let Err(e) = within(limit, t) {
        return Outcome::new(false, e);
    }
    let f = failures(&records);
    let detail = if f.is_empty() {
        format!("{label}: {} checks, {}, {t:.2?}", records.len(), suites::Summary::of(&records))
    } else {
        format!("{label}: {}", describe_failures(&records))
    };
    Outcome::new(f.is_empty() && !records.is_empty(), detail)
}

fn criterion_3() -> Outcome {
    suite_criterion(
        Duration::from_secs(60),
        || suites::identities(&SuiteConfig::default()),
        "identity suite",
    )
}

fn criterion_4() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("pool");
    suite_criterion(
        Duration::from_secs(600),
        || {
            pool.install(|| {
                let cfg = SuiteConfig::default();
                let mut r = suites::theorem_suite(&cfg);
                r.extend(suites::lemma_suite(&cfg));
                r
            })
        },
        "theorems and lemmas, single-threaded",
    )
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let records = suites::qlogconvex(&SuiteConfig::default());
    let t = start.elapsed();
    let covered = |id: &str, lo: usize, hi: usize| {
        (lo..=hi).all(|n| {
            records
                .iter()
                .any(|r| r.id == id && r.params.starts_with(&format!("n={n} ")) && r.verdict == Verdict::Pass)
        })
    };
    let coverage = covered("qlc-S1", 1, 30)
        && covered("qlc-S2", 1, 25)
        && covered("qlc-S3", 3, 25)
        && covered("qlc-binom-cubed", 9, 25);
    let below: Vec<String> = records
        .iter()
        .filter(|r| r.verdict == Verdict::Inapplicable)
        .map(|r| format!("{} {}", r.id, r.params))
        .collect();
    let f = failures(&records);
    Outcome::new(
        f.is_empty() && coverage,
        format!(
            "S1<=30, S2<=25, S3<=25, binom-cubed 9..25 all pass: {coverage}; {} fails; {} witnesses below thresholds reported; {t:.2?}",
            f.len(),
            below.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let records = match suites::conjecture_suite(&SuiteConfig::default()) {
        Ok(r) => r,
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    let t = start.elapsed();
    if let Err(e) = within(Duration::from_secs(1800), t) {
        return Outcome::new(false, e);
    }
    let f = failures(&records);
    let mut detail = format!("{}, {t:.2?}", suites::Summary::of(&records));
    if !f.is_empty() {
        detail.push_str("; ");
        detail.push_str(&describe_failures(&records));
    }
    Outcome::new(f.is_empty(), detail)
}

fn criterion_7() -> Outcome {
    let mut compared = 0usize;
    let mut mismatches = Vec::new();
    for spec in builtin_registry().iter().filter(|s| s.kind.is_congruence()) {
        for p in primes_up_to(23).into_iter().filter(|&p| p > 2) {
            if !matches!(applicability(spec, p), Ok(None)) {
                continue;
            }
            match (weighted_sum_mod(spec, p, 2), exact_sum_reduced(spec, p)) {
                (Ok(a), Ok(b)) => {
                    compared += 1;
                    if a != b {
                        mismatches.push(format!("{} p={p}: {} vs {}", spec.id, a.value(), b.value()));
                    }
                }
                (Err(_), Err(_)) => {}
                (a, b) => mismatches.push(format!("{} p={p}: {a:?} vs {b:?}", spec.id)),
            }
        }
    }
    let n_specs = builtin_registry()
        .iter()
        .filter(|s| matches!(s.kind, CheckKind::RepCongruence | CheckKind::RhsCongruence))
        .count();
    Outcome::new(
        mismatches.is_empty() && compared > 0,
        format!("{compared} (record, p) pairs over {n_specs} records, mismatches {mismatches:?}"),
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (target, digits) in [
        (SeriesTarget::eq911(), 25),
        (SeriesTarget::eq18(), 25),
        (SeriesTarget::sato(), 15),
    ] {
        match evaluate_and_compare(&target, digits) {
            Ok(r) => {
                let pass = r.lhs.overlaps(&r.rhs) && r.agreed_digits >= digits as i64;
                ok &= pass;
                parts.push(format!("{} {} digits (need {digits}, N={})", r.id, r.agreed_digits, r.terms_used));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{}: {e}", target.id));
            }
        }
    }
    let t = start.elapsed();
    if let Err(e) = within(Duration::from_secs(300), t) {
        return Outcome::new(false, e);
    }
    Outcome::new(ok, format!("{}; heuristic tail; {t:.2?}", parts.join(", ")))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut failed = Vec::new();
    let props = support::all();
    for (name, f) in &props {
        if let Err(e) = f() {
            failed.push(format!("{name}: {e}"));
        }
    }
    Outcome::new(
        failed.is_empty(),
        format!(
            "{} properties x {} cases, fixed seed, failures {failed:?}, {:.2?}",
            props.len(),
            support::CASES,
            start.elapsed()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("golden values S_k^(2)(-1)", criterion_1),
        ("values at x = 1", criterion_2),
        ("identity suite", criterion_3),
        ("theorem and lemma suite", criterion_4),
        ("q-log-convexity", criterion_5),
        ("conjecture registry", criterion_6),
        ("dual-path oracle", criterion_7),
        ("series for 1/pi", criterion_8),
        ("property suites", criterion_9),
    ];
    let mut all_ok = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        all_ok &= o.ok;
        println!(
            "criterion {} [{}] {}: {}",
            i + 1,
            if o.ok { "PASS" } else { "FAIL" },
            name,
            o.detail
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
