//! Batch drivers: each suite expands a [`SuiteConfig`] into independent
//! checks, runs them in parallel and returns the records in a fixed order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::conjectures::{
    audit_cases, builtin_registry, check_congruence, check_divisibility_with,
    check_padic_integrality_with, cross_check, exact_sum_reduced, symmetry_audit,
    weighted_sum_mod, CheckKind, CheckOutcome, ConjectureSpec, WeightedSeries,
};
use crate::error::{Error, Result};
use crate::exactmath::{binomial, primes_up_to};
use crate::polyfamily::{
    apery, legendre_p, s1_closed, s1_recurrence_residual, s_poly, s_poly_direct, s_poly_sumsq,
    trinomial_recurrence_check, S1Form, TrinomialVariant,
};
use crate::qconvex::{qlc_scan, PolySequenceFamily};
use crate::report::{CheckRecord, TheoremReport, Verdict};
use crate::series::{evaluate_and_compare, SeriesTarget};
use crate::theorems;
use crate::ExactRational;

/// `S_k^(2)(-1)` for `k = 0..9`.
pub const S2_AT_MINUS_ONE: [i64; 10] = [1, 1, 9, 73, 361, 5001, 35001, 348489, 3693033, 31360681];

/// Bounds and selections shared by all suites. `None` means the suite's own default.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Inclusive bound on primes.
    pub pmax: Option<u64>,
    /// Inclusive bound on indices.
    pub nmax: Option<usize>,
    pub digits: Option<u32>,
    /// Id prefix selecting registry records or series targets.
    pub id: Option<String>,
    /// Replaces the built-in registry.
    pub registry: Option<Vec<ConjectureSpec>>,
    /// Seed for sampled evaluation points.
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            pmax: None,
            nmax: None,
            digits: None,
            id: None,
            registry: None,
            seed: 2024,
        }
    }
}

impl SuiteConfig {
    fn p(&self, default: u64) -> u64 {
        self.pmax.unwrap_or(default)
    }

    fn n(&self, default: usize) -> usize {
        self.nmax.unwrap_or(default)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Identities,
    Theorems,
    Lemmas,
    QLogConvex,
    Conjectures,
    Series,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Identities,
        Suite::Theorems,
        Suite::Lemmas,
        Suite::QLogConvex,
        Suite::Conjectures,
        Suite::Series,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Theorems => "theorems",
            Suite::Lemmas => "lemmas",
            Suite::QLogConvex => "qlogconvex",
            Suite::Conjectures => "conjectures",
            Suite::Series => "series",
        }
    }

    pub fn run(&self, cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
        match self {
            Suite::Identities => Ok(identities(cfg)),
            Suite::Theorems => Ok(theorem_suite(cfg)),
            Suite::Lemmas => Ok(lemma_suite(cfg)),
            Suite::QLogConvex => Ok(qlogconvex(cfg)),
            Suite::Conjectures => conjecture_suite(cfg),
            Suite::Series => series_suite(cfg),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

/// Verdict counts over a set of records.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
    pub excluded: usize,
}

impl Summary {
    pub fn of(records: &[CheckRecord]) -> Self {
        let mut s = Summary::default();
        for r in records {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Inapplicable => s.inapplicable += 1,
                Verdict::Excluded => s.excluded += 1,
            }
        }
        s
    }

    pub fn ok(&self) -> bool {
        self.fail == 0
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} pass, {} fail, {} inapplicable, {} excluded",
            self.pass, self.fail, self.inapplicable, self.excluded
        )
    }
}

fn rec(suite: &str, id: &str, params: String, ok: bool, detail: impl Into<String>) -> CheckRecord {
    CheckRecord::new(suite, id, params, Verdict::from_bool(ok), detail)
}

// ---------------------------------------------------------------- identities

#[derive(Debug, Clone, Copy)]
enum IdentityTask {
    Golden(usize),
    Apery(usize),
    CentralBinomial(usize),
    SumOfSquares(u32, usize),
    S1Closed(usize),
    S1Recurrence(usize),
    ChuVandermonde(usize, usize),
    Legendre(usize, u64),
    Nonnegative(u32, usize),
    Trinomial(usize),
}

fn one_at(m: u32, n: usize) -> BigInt {
    s_poly_direct(m, n).coeffs().iter().sum()
}

fn run_identity(task: IdentityTask) -> CheckRecord {
    const S: &str = "identities";
    match task {
        IdentityTask::Golden(k) => {
            let v = s_poly(2, k).eval(&BigInt::from(-1));
            let expected = BigInt::from(S2_AT_MINUS_ONE[k]);
            rec(S, "s2-at-minus-one", format!("k={k}"), v == expected, format!("{v} vs {expected}"))
        }
        IdentityTask::Apery(n) => {
            let (v, a) = (one_at(2, n), apery(n));
            rec(S, "s2-at-one-apery", format!("n={n}"), v == a, if v == a { String::new() } else { format!("{v} vs {a}") })
        }
        IdentityTask::CentralBinomial(n) => {
            let v = one_at(0, n);
            let e = binomial(2 * n as u64 + 2, n as i64 + 1) - 1;
            rec(S, "s0-at-one", format!("n={n}"), v == e, if v == e { String::new() } else { format!("{v} vs {e}") })
        }
        IdentityTask::SumOfSquares(m, n) => {
            let ok = s_poly_sumsq(m, n) == s_poly_direct(m, n);
            rec(S, "sum-of-squares", format!("m={m} n={n}"), ok, "")
        }
        IdentityTask::S1Closed(n) => {
            let direct = s_poly_direct(1, n);
            let sq = s1_closed(n, S1Form::Squares) == direct;
            let tri = s1_closed(n, S1Form::Trinomial) == direct;
            let detail = match (sq, tri) {
                (true, true) => String::new(),
                _ => format!("squares form {sq}, trinomial form {tri}"),
            };
            rec(S, "s1-closed-forms", format!("n={n}"), sq && tri, detail)
        }
        IdentityTask::S1Recurrence(n) => {
            let r = s1_recurrence_residual(n);
            let ok = r.degree().is_none();
            rec(S, "s1-recurrence", format!("n={n}"), ok, if ok { String::new() } else { format!("residual {r}") })
        }
        IdentityTask::ChuVandermonde(i, jmax) => {
            let bad = (0..=jmax).find(|&j| {
                let lhs = binomial((i + j) as u64, i as i64);
                let rhs: BigInt = (0..=i.min(j))
                    .map(|k| binomial(i as u64, k as i64) * binomial(j as u64, k as i64))
                    .sum();
                lhs != rhs
            });
            rec(
                S,
                "chu-vandermonde",
                format!("i={i} j<={jmax}"),
                bad.is_none(),
                bad.map(|j| format!("fails at j={j}")).unwrap_or_default(),
            )
        }
        IdentityTask::Legendre(n, seed) => {
            let mut rng = StdRng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let mut bad = None;
            for _ in 0..8 {
                let z = ExactRational::new(
                    rng.random_range(-50i64..=50).into(),
                    rng.random_range(1i64..=30).into(),
                );
                let lhs = legendre_p(n, &z) * ExactRational::from_integer(BigInt::one() << n);
                let zp = &z + ExactRational::one();
                let zm = &z - ExactRational::one();
                let rhs: ExactRational = (0..=n)
                    .map(|k| {
                        let c = binomial(n as u64, k as i64);
                        ExactRational::from_integer(&c * &c)
                            * num_traits::pow(zp.clone(), k)
                            * num_traits::pow(zm.clone(), n - k)
                    })
                    .sum();
                if lhs != rhs {
                    bad = Some(z);
                    break;
                }
            }
            rec(
                S,
                "legendre-squares",
                format!("n={n} seed={seed}"),
                bad.is_none(),
                bad.map(|z| format!("fails at z={z}")).unwrap_or_default(),
            )
        }
        IdentityTask::Nonnegative(m, n) => {
            let p = s_poly(m, n);
            let ok = p.coeff(0) == BigInt::one() && p.is_nonnegative();
            rec(S, "nonnegative-coefficients", format!("m={m} n={n}"), ok, "")
        }
        IdentityTask::Trinomial(big_n) => {
            let mut printed_failures = 0usize;
            let mut standard_failure = None;
            let mut grid = 0usize;
            for b in -3i64..=3 {
                for c in -3i64..=3 {
                    grid += 1;
                    let s = trinomial_recurrence_check(big_n, b, c, TrinomialVariant::Standard);
                    if let (false, None) = (s.holds, &standard_failure) {
                        standard_failure = Some(format!("b={b} c={c} n={:?}", s.first_failure));
                    }
                    if !trinomial_recurrence_check(big_n, b, c, TrinomialVariant::Printed).holds {
                        printed_failures += 1;
                    }
                }
            }
            let detail = format!(
                "factor (n+1)(b^2-4c) holds{}; factor (n+1)(n^2-4c) fails on {printed_failures} of {grid} (b,c) pairs",
                standard_failure.as_ref().map(|f| format!(" except {f}")).unwrap_or_default()
            );
            rec(S, "trinomial-recurrence", format!("N={big_n} |b|,|c|<=3"), standard_failure.is_none(), detail)
        }
    }
}

pub fn identities(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut tasks = Vec::new();
    tasks.extend((0..=cfg.n(9).min(9)).map(IdentityTask::Golden));
    tasks.extend((0..=cfg.n(60)).map(IdentityTask::Apery));
    tasks.extend((0..=cfg.n(60)).map(IdentityTask::CentralBinomial));
    for m in 0..=3 {
        tasks.extend((0..=cfg.n(25)).map(|n| IdentityTask::SumOfSquares(m, n)));
    }
    tasks.extend((0..=cfg.n(40)).map(IdentityTask::S1Closed));
    tasks.extend((0..=cfg.n(40)).map(IdentityTask::S1Recurrence));
    let cv = cfg.n(30);
    tasks.extend((0..=cv).map(|i| IdentityTask::ChuVandermonde(i, cv)));
    tasks.extend((0..=cfg.n(20)).map(|n| IdentityTask::Legendre(n, cfg.seed)));
    for m in 0..=3 {
        tasks.extend((0..=cfg.n(40)).map(|n| IdentityTask::Nonnegative(m, n)));
    }
    tasks.push(IdentityTask::Trinomial(cfg.n(30).max(2)));
    tasks.into_par_iter().map(run_identity).collect()
}

// ------------------------------------------------------- theorems and lemmas

type TheoremFn = fn(u64) -> Result<TheoremReport>;

fn theorem_record(suite: &str, id: &str, arg: u64, r: Result<TheoremReport>) -> CheckRecord {
    match r {
        Ok(rep) => CheckRecord::from_theorem(suite, &rep),
        Err(e) => CheckRecord::new(suite, id, format!("{arg}"), Verdict::Fail, e.to_string()),
    }
}

fn run_tasks(suite: &'static str, tasks: Vec<(&'static str, TheoremFn, u64)>) -> Vec<CheckRecord> {
    tasks
        .into_par_iter()
        .map(|(id, f, arg)| theorem_record(suite, id, arg, f(arg)))
        .collect()
}

fn odd_primes(lo_exclusive: u64, hi: u64) -> impl Iterator<Item = u64> {
    primes_up_to(hi.max(2))
        .into_iter()
        .filter(move |&p| p > 2 && p > lo_exclusive)
}

fn thm13_membership(n: u64) -> Result<TheoremReport> {
    theorems::verify_thm13_membership(n as usize)
}

pub fn theorem_suite(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut tasks: Vec<(&'static str, TheoremFn, u64)> = Vec::new();
    tasks.extend(odd_primes(2, cfg.p(97)).map(|p| ("thm-s0-sum", theorems::verify_thm12 as TheoremFn, p)));
    tasks.extend(odd_primes(3, cfg.p(97)).map(|p| ("corollary-s0", theorems::verify_corollary12 as TheoremFn, p)));
    tasks.extend((1..=cfg.n(48) as u64).map(|n| ("thm-s1-membership", thm13_membership as TheoremFn, n)));
    tasks.extend(odd_primes(2, cfg.p(31)).map(|p| ("thm-s1-modp", theorems::verify_thm13_modp as TheoremFn, p)));
    tasks.extend(odd_primes(3, cfg.p(23)).map(|p| ("k-weighted-sum", theorems::verify_sec3_ksum as TheoremFn, p)));
    run_tasks("theorems", tasks)
}

pub fn lemma_suite(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut tasks: Vec<(&'static str, TheoremFn, u64)> = Vec::new();
    tasks.extend(odd_primes(2, cfg.p(97)).map(|p| ("lemma-binomial-sum", theorems::verify_lemma21 as TheoremFn, p)));
    tasks.extend(
        odd_primes(2, cfg.p(97)).map(|p| ("lemma-minus-half", theorems::verify_minushalf_binom as TheoremFn, p)),
    );
    let mut out = run_tasks("lemmas", tasks);
    let (ki, st, tc) = (cfg.n(200) as u64, cfg.n(30), cfg.n(12));
    let tail: Vec<TheoremReport> = [0, 1, 2]
        .into_par_iter()
        .map(|i| match i {
            0 => theorems::verify_lemma_ki(ki),
            1 => theorems::verify_lemma_st(st),
            _ => theorems::verify_lemma_2c_12c2(tc),
        })
        .collect();
    out.extend(tail.iter().map(|r| CheckRecord::from_theorem("lemmas", r)));
    out
}

// --------------------------------------------------------------- qlogconvex

/// A scan together with how its witnesses are judged.
#[derive(Debug, Clone, Copy)]
struct Scan {
    family: PolySequenceFamily,
    lo: usize,
    hi: usize,
    /// Witnesses fail the run only when the claim covers the range.
    claimed: bool,
}

pub fn qlogconvex(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    use PolySequenceFamily as F;
    let scans = [
        Scan { family: F::S { m: 1, start: 0 }, lo: 1, hi: cfg.n(30), claimed: true },
        Scan { family: F::S { m: 2, start: 0 }, lo: 1, hi: cfg.n(25), claimed: true },
        Scan { family: F::S { m: 3, start: 2 }, lo: 3, hi: cfg.n(25), claimed: true },
        Scan { family: F::BinomCubed { start: 8 }, lo: 9, hi: cfg.n(25), claimed: true },
        Scan { family: F::ShiftedBinom { m: 2, start: 0 }, lo: 1, hi: cfg.n(25), claimed: true },
        Scan { family: F::ShiftedBinom { m: 3, start: 0 }, lo: 1, hi: cfg.n(25), claimed: true },
        Scan { family: F::Beta { start: 0 }, lo: 1, hi: cfg.n(25), claimed: true },
        // Below the conjectured starting points: reported only.
        Scan { family: F::BinomCubed { start: 0 }, lo: 1, hi: cfg.n(8).min(8), claimed: false },
        Scan { family: F::S { m: 3, start: 0 }, lo: 1, hi: cfg.n(2).min(2), claimed: false },
    ];
    let mut out = Vec::new();
    for s in scans {
        let id = format!("qlc-{}", s.family.name());
        for e in qlc_scan(s.family, s.lo, s.hi) {
            let params = format!("n={} start={}", e.n, s.family.start());
            let r = match (&e.witness, s.claimed) {
                (None, _) => CheckRecord::new("qlogconvex", id.clone(), params, Verdict::Pass, ""),
                (Some(w), claimed) => CheckRecord::new(
                    "qlogconvex",
                    id.clone(),
                    params,
                    if claimed { Verdict::Fail } else { Verdict::Inapplicable },
                    format!(
                        "{}coefficient of q^{} is {}",
                        if claimed { "" } else { "below conjectured start; " },
                        w.coefficient_index,
                        w.value
                    ),
                ),
            };
            out.push(r);
        }
    }
    out
}

// -------------------------------------------------------------- conjectures

/// Default inclusive prime bound for congruences (`p < 60`).
pub const CONJ_PMAX: u64 = 59;
/// Default bound on `p n` for p-adic checks.
pub const PADIC_PN: u64 = 60;
/// Default largest `n` for divisibility claims.
pub const DIV_NMAX: usize = 200;
/// Primes below this bound are audited for case exhaustiveness and symmetry.
pub const AUDIT_BOUND: u64 = 500;
/// Dual-path comparison bound.
pub const DUAL_PATH_PMAX: u64 = 23;

fn outcome_record(o: CheckOutcome) -> CheckRecord {
    let mut params = Vec::new();
    if let Some(p) = o.p {
        params.push(format!("p={p}"));
    }
    if let Some(n) = o.n {
        params.push(format!("n={n}"));
    }
    let mut detail = o.kind.clone();
    if !o.lhs.is_empty() || !o.rhs.is_empty() {
        detail.push_str(&format!("; lhs={} rhs={}", o.lhs, o.rhs));
    }
    if !o.detail.is_empty() {
        detail.push_str("; ");
        detail.push_str(&o.detail);
    }
    CheckRecord::new("conjectures", o.spec_id, params.join(" "), o.verdict, detail)
}

/// The registry selected by `cfg`.
pub fn selected_specs(cfg: &SuiteConfig) -> Result<Vec<ConjectureSpec>> {
    let all = match &cfg.registry {
        Some(r) => r.clone(),
        None => builtin_registry(),
    };
    let Some(id) = &cfg.id else {
        return Ok(all);
    };
    let chosen: Vec<_> = all.into_iter().filter(|s| s.matches_id(id)).collect();
    if chosen.is_empty() {
        return Err(Error::InvalidArgument(format!("no registry record matches id `{id}`")));
    }
    Ok(chosen)
}

/// Dual-path comparison of one record at one prime, `None` when not applicable.
pub fn dual_path(spec: &ConjectureSpec, p: u64) -> Option<std::result::Result<(), String>> {
    if !spec.kind.is_congruence() || !matches!(crate::conjectures::applicability(spec, p), Ok(None)) {
        return None;
    }
    match (weighted_sum_mod(spec, p, 2), exact_sum_reduced(spec, p)) {
        (Ok(a), Ok(b)) if a == b => Some(Ok(())),
        (Ok(a), Ok(b)) => Some(Err(format!("p={p}: modular {} vs exact {}", a.value(), b.value()))),
        (Err(_), Err(_)) => Some(Ok(())),
        (a, b) => Some(Err(format!("p={p}: modular {a:?} vs exact {b:?}"))),
    }
}

fn audit_record(spec: &ConjectureSpec) -> Option<CheckRecord> {
    spec.rule.as_ref()?;
    let primes = odd_primes(2, AUDIT_BOUND - 1);
    let mut audited = 0usize;
    for p in primes {
        let bad = match audit_cases(spec, p) {
            Ok(None) => continue,
            Ok(Some(a)) if a.ok() => match symmetry_audit(spec, p) {
                Ok(true) => None,
                Ok(false) => Some(format!("p={p}: result depends on the choice of representation")),
                Err(e) => Some(format!("p={p}: {e}")),
            },
            Ok(Some(a)) => Some(format!("p={p}: firing branches {:?}", a.firing)),
            Err(e) => Some(format!("p={p}: {e}")),
        };
        if let Some(why) = bad {
            return Some(CheckRecord::new("conjectures", spec.id.clone(), format!("audit p<{AUDIT_BOUND}"), Verdict::Fail, why));
        }
        audited += 1;
    }
    Some(CheckRecord::new(
        "conjectures",
        spec.id.clone(),
        format!("audit p<{AUDIT_BOUND}"),
        Verdict::Pass,
        format!("case exhaustiveness and sign symmetry at {audited} primes"),
    ))
}

fn spec_records(spec: &ConjectureSpec, all: &[ConjectureSpec], cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    match spec.kind {
        CheckKind::RepCongruence | CheckKind::RhsCongruence => {
            let pmax = cfg.p(CONJ_PMAX);
            let outcomes: Vec<CheckOutcome> = odd_primes(2, pmax)
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|p| check_congruence(spec, p))
                .collect();
            out.extend(outcomes.into_iter().map(outcome_record));
            if let Some(r) = audit_record(spec) {
                out.push(r);
            }
            let dual: Vec<String> = odd_primes(2, DUAL_PATH_PMAX.min(pmax))
                .filter_map(|p| dual_path(spec, p))
                .filter_map(|r| r.err())
                .collect();
            out.push(CheckRecord::new(
                "conjectures",
                spec.id.clone(),
                format!("dual-path p<={}", DUAL_PATH_PMAX.min(pmax)),
                Verdict::from_bool(dual.is_empty()),
                dual.first().cloned().unwrap_or_else(|| "modular and exact sums agree".into()),
            ));
        }
        CheckKind::PadicIntegrality => {
            let pn = cfg.pmax.map_or(PADIC_PN, |p| p + 1);
            let series = WeightedSeries::new(spec, pn as usize);
            let jobs: Vec<(u64, u64)> = odd_primes(2, pn)
                .flat_map(|p| (1..=pn / p).map(move |n| (p, n)))
                .collect();
            let outcomes: Vec<CheckOutcome> = jobs
                .into_par_iter()
                .map(|(p, n)| check_padic_integrality_with(spec, &series, p, n))
                .collect();
            out.extend(outcomes.into_iter().map(outcome_record));
            for other in all.iter().filter(|o| o.kind == CheckKind::RhsCongruence) {
                for p in odd_primes(2, cfg.p(CONJ_PMAX)) {
                    if let Some(o) = cross_check(spec, other, p) {
                        out.push(outcome_record(o));
                    }
                }
            }
        }
        CheckKind::Divisibility => {
            let nmax = cfg.n(DIV_NMAX);
            let p_bound = cfg.p(CONJ_PMAX) + 1;
            let series = WeightedSeries::new(spec, nmax);
            let outcomes: Vec<CheckOutcome> = (1..=nmax as u64)
                .into_par_iter()
                .map(|n| check_divisibility_with(spec, &series, n, p_bound))
                .collect();
            out.extend(outcomes.into_iter().map(outcome_record));
        }
    }
    out
}

pub fn conjecture_suite(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let specs = selected_specs(cfg)?;
    let all = match &cfg.registry {
        Some(r) => r.clone(),
        None => builtin_registry(),
    };
    let per_spec: Vec<Vec<CheckRecord>> = specs
        .par_iter()
        .map(|s| spec_records(s, &all, cfg))
        .collect();
    Ok(per_spec.into_iter().flatten().collect())
}

// ------------------------------------------------------------------- series

pub fn selected_targets(cfg: &SuiteConfig) -> Result<Vec<SeriesTarget>> {
    let all = SeriesTarget::builtin();
    let Some(id) = &cfg.id else {
        return Ok(all);
    };
    let chosen: Vec<_> = all.into_iter().filter(|t| &t.id == id).collect();
    if chosen.is_empty() {
        return Err(Error::InvalidArgument(format!("unknown series id `{id}` (eq911, eq18, sato)")));
    }
    Ok(chosen)
}

pub fn series_suite(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    if cfg.digits == Some(0) {
        return Err(Error::InvalidArgument("digits must be at least 1".into()));
    }
    let targets = selected_targets(cfg)?;
    Ok(targets
        .par_iter()
        .map(|t| {
            let digits = cfg.digits.unwrap_or_else(|| t.default_digits());
            let params = format!("digits={digits}");
            match evaluate_and_compare(t, digits) {
                Ok(r) => CheckRecord::new(
                    "series",
                    t.id.clone(),
                    params,
                    Verdict::from_bool(r.passed),
                    format!(
                        "agreed_digits={} N={} rho={:.4} heuristic tail 1e{:.1}; lhs={}; rhs={}",
                        r.agreed_digits, r.terms_used, r.rho, r.tail_log10, r.lhs, r.rhs
                    ),
                ),
                Err(e) => CheckRecord::new("series", t.id.clone(), params, Verdict::Fail, e.to_string()),
            }
        })
        .collect())
}

/// Every suite in order.
pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for s in Suite::ALL {
        out.extend(s.run(cfg)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            pmax: Some(13),
            nmax: Some(6),
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn small_identity_run_passes() {
        let r = identities(&small());
        assert!(!r.is_empty());
        assert!(Summary::of(&r).ok(), "{:?}", r.iter().find(|x| x.verdict.is_fail()));
    }

    #[test]
    fn nmax_zero_is_trivial() {
        let cfg = SuiteConfig {
            nmax: Some(0),
            ..SuiteConfig::default()
        };
        assert!(Summary::of(&identities(&cfg)).ok());
    }

    #[test]
    fn unknown_ids_are_config_errors() {
        let cfg = SuiteConfig {
            id: Some("no-such".into()),
            ..SuiteConfig::default()
        };
        assert!(conjecture_suite(&cfg).is_err());
        assert!(series_suite(&cfg).is_err());
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn excluded_prime_is_reported() {
        let cfg = SuiteConfig {
            id: Some("4.8".into()),
            pmax: Some(13),
            ..SuiteConfig::default()
        };
        let r = conjecture_suite(&cfg).unwrap();
        assert!(r.iter().any(|x| x.params == "p=11" && x.verdict == Verdict::Excluded));
    }

    #[test]
    fn records_are_deterministic() {
        let cfg = SuiteConfig {
            id: Some("4.1".into()),
            pmax: Some(17),
            ..SuiteConfig::default()
        };
        assert_eq!(conjecture_suite(&cfg).unwrap(), conjecture_suite(&cfg).unwrap());
    }
}
