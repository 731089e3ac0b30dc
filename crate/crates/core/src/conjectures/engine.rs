//! Evaluation of registry records against concrete primes and indices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::expr::Env;
use super::registry::{CheckKind, ConjectureSpec, DivTarget, RepRule};
use super::rep::{all_reps, normalize_rep, solve_rep, NormTag, Representation};
use crate::error::{Error, Result};
use crate::exactmath::{is_prime, padic_valuation, primes_up_to, reduce_mod, Residue};
use crate::polyfamily::{s_value, ModularFamily};
use crate::report::Verdict;
use crate::ExactRational;

/// Result of one (record, p) or (record, p, n) or (record, n) check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub spec_id: String,
    pub kind: String,
    pub p: Option<u64>,
    pub n: Option<u64>,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl CheckOutcome {
    fn new(spec: &ConjectureSpec, p: Option<u64>, n: Option<u64>) -> Self {
        CheckOutcome {
            spec_id: spec.id.clone(),
            kind: spec.kind.to_string(),
            p,
            n,
            lhs: String::new(),
            rhs: String::new(),
            verdict: Verdict::Pass,
            detail: String::new(),
        }
    }

    fn with(mut self, verdict: Verdict, detail: impl Into<String>) -> Self {
        self.verdict = verdict;
        self.detail = detail.into();
        self
    }
}

/// `None` when the record applies at `p`, else the short-circuit verdict.
pub fn applicability(spec: &ConjectureSpec, p: u64) -> Result<Option<(Verdict, String)>> {
    if p < 3 || !is_prime(p) {
        return Ok(Some((Verdict::Inapplicable, format!("{p} is not an odd prime"))));
    }
    if p < spec.p_min {
        return Ok(Some((Verdict::Inapplicable, format!("needs p >= {}", spec.p_min))));
    }
    if spec.excluded.contains(&p) {
        return Ok(Some((Verdict::Excluded, format!("p = {p} is excluded"))));
    }
    if !spec.condition.eval_bool(&Env::with_p(p))? {
        return Ok(Some((Verdict::Inapplicable, format!("condition {} fails", spec.condition))));
    }
    Ok(None)
}

fn weight(spec: &ConjectureSpec, k: u64) -> ExactRational {
    &spec.weights.0 * ExactRational::from_integer(k.into()) + &spec.weights.1
}

/// `(a k + b) r^k S_k^(m)(c)` for `k < count`, exactly.
pub fn weighted_terms(spec: &ConjectureSpec, count: usize) -> Vec<ExactRational> {
    (0..count)
        .into_par_iter()
        .map(|k| weight(spec, k as u64) * num_traits::pow(spec.r.clone(), k) * s_value(spec.m, k, &spec.c))
        .collect()
}

/// Prefix sums `P(n) = sum_{k<n} w(k)` of the weighted terms.
#[derive(Debug, Clone)]
pub struct WeightedSeries {
    terms: Vec<ExactRational>,
    prefix: Vec<ExactRational>,
}

impl WeightedSeries {
    pub fn new(spec: &ConjectureSpec, count: usize) -> Self {
        let terms = weighted_terms(spec, count);
        let mut prefix = Vec::with_capacity(count + 1);
        prefix.push(ExactRational::zero());
        for t in &terms {
            let next = prefix.last().expect("nonempty") + t;
            prefix.push(next);
        }
        WeightedSeries { terms, prefix }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn prefix(&self, n: usize) -> &ExactRational {
        &self.prefix[n]
    }

    pub fn terms(&self) -> &[ExactRational] {
        &self.terms
    }
}

/// `sum_{k<p} w(k)` as an exact rational.
pub fn weighted_sum_exact(spec: &ConjectureSpec, p: u64) -> ExactRational {
    weighted_terms(spec, p as usize)
        .into_iter()
        .fold(ExactRational::zero(), |a, b| a + b)
}

/// `sum_{k<p} w(k)` modulo `p^power`, evaluated in `Z/p^power`. When `p`
/// divides a denominator of `c` or `r` the exact sum is reduced instead.
pub fn weighted_sum_mod(spec: &ConjectureSpec, p: u64, power: u32) -> Result<Residue> {
    let md = p.pow(power);
    let reduced = (|| -> Result<_> {
        Ok((
            reduce_mod(&spec.weights.0, md)?,
            reduce_mod(&spec.weights.1, md)?,
            reduce_mod(&spec.r, md)?,
            reduce_mod(&spec.c, md)?,
        ))
    })();
    let (a, b, r, c) = match reduced {
        Ok(v) => v,
        Err(Error::NonInvertibleDenominator { .. }) => {
            return reduce_mod(&weighted_sum_exact(spec, p), md);
        }
        Err(e) => return Err(e),
    };
    let fam = ModularFamily::new(p as usize, md);
    let mut total = Residue::zero(md);
    let mut rk = Residue::one(md);
    for k in 0..p {
        let w = a.mul(&Residue::new(k % md, md))?.add(&b)?;
        let term = w.mul(&rk)?.mul(&fam.s_eval(spec.m, k as usize, &c))?;
        total = total.add(&term)?;
        rk = rk.mul(&r)?;
    }
    Ok(total)
}

/// Which branch of a representation rule applies at `p`.
#[derive(Debug, Clone, PartialEq)]
pub enum RuleResolution {
    Case {
        index: usize,
        rep: Representation,
        value: ExactRational,
    },
    Otherwise(ExactRational),
    NoneApplies,
}

/// First normalizable solution. Solutions are tried in `solve_rep` order,
/// since whether a tag can be met may depend on the solution picked.
fn representation_for(target: u64, a: u64, d: u64, tag: NormTag) -> Option<Representation> {
    let first = solve_rep(target, a, d)?;
    std::iter::once(first)
        .chain(all_reps(target, a, d).into_iter().filter(|r| r.x >= 0 && r.y >= 0))
        .find_map(|r| normalize_rep(r, tag).ok())
}

/// Resolves the first firing case: its condition holds, a representation of
/// the target exists, and the representation can be normalized.
pub fn resolve_rule(rule: &RepRule, p: u64) -> Result<RuleResolution> {
    let env = Env::with_p(p);
    let mut held = Vec::new();
    for (index, case) in rule.cases.iter().enumerate() {
        if !case.when.eval_bool(&env)? {
            continue;
        }
        held.push(index);
        let target = case.target_multiple * p;
        if let Some(rep) = representation_for(target, case.a, case.d, case.norm) {
            let value = case.result.eval_num(&Env {
                p: Some(p),
                x: Some(rep.x),
                y: Some(rep.y),
                n: None,
            })?;
            return Ok(RuleResolution::Case { index, rep, value });
        }
    }
    if let Some(o) = &rule.otherwise {
        if o.when.eval_bool(&env)? {
            return Ok(RuleResolution::Otherwise(o.result.eval_num(&env)?));
        }
    }
    if held.is_empty() {
        Ok(RuleResolution::NoneApplies)
    } else {
        Err(Error::NoRepresentationFound {
            target: rule.cases[held[0]].target_multiple * p,
            a: rule.cases[held[0]].a,
            d: rule.cases[held[0]].d,
        })
    }
}

/// Right-hand side modulo `p^2`, or `None` if no branch of the rule applies.
pub fn expected_rhs(spec: &ConjectureSpec, p: u64) -> Result<Option<(Residue, String)>> {
    let md = p * p;
    match spec.kind {
        CheckKind::RhsCongruence => {
            let rhs = spec.rhs.as_ref().ok_or_else(|| Error::InvalidArgument("record has no rhs".into()))?;
            let v = rhs.eval_num(&Env::with_p(p))?;
            Ok(Some((reduce_mod(&v, md)?, format!("{rhs} = {v}"))))
        }
        CheckKind::RepCongruence => {
            let rule = spec
                .rule
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("record has no rule".into()))?;
            match resolve_rule(rule, p)? {
                RuleResolution::Case { index, rep, value } => Ok(Some((
                    reduce_mod(&value, md)?,
                    format!("case {index}: {rep}, result {value}"),
                ))),
                RuleResolution::Otherwise(v) => Ok(Some((reduce_mod(&v, md)?, "otherwise".into()))),
                RuleResolution::NoneApplies => Ok(None),
            }
        }
        _ => Err(Error::InvalidArgument(format!("{} is not a congruence", spec.id))),
    }
}

/// Compares the `p^2` sum with the claimed right-hand side.
pub fn check_congruence(spec: &ConjectureSpec, p: u64) -> CheckOutcome {
    let out = CheckOutcome::new(spec, Some(p), None);
    match applicability(spec, p) {
        Ok(Some((v, why))) => return out.with(v, why),
        Err(e) => return out.with(Verdict::Fail, format!("condition error: {e}")),
        Ok(None) => {}
    }
    let rhs = match expected_rhs(spec, p) {
        Ok(Some(r)) => r,
        Ok(None) => return out.with(Verdict::Inapplicable, "no case of the rule applies"),
        Err(e @ Error::NonInvertibleDenominator { .. }) => return out.with(Verdict::Excluded, e.to_string()),
        Err(e) => return out.with(Verdict::Fail, format!("registry fault: {e}")),
    };
    let lhs = match weighted_sum_mod(spec, p, 2) {
        Ok(l) => l,
        Err(e @ Error::NonInvertibleDenominator { .. }) => return out.with(Verdict::Excluded, e.to_string()),
        Err(e) => return out.with(Verdict::Fail, e.to_string()),
    };
    let mut out = out;
    out.lhs = lhs.value().to_string();
    out.rhs = rhs.0.value().to_string();
    let verdict = Verdict::from_bool(lhs == rhs.0);
    out.with(verdict, format!("mod {}; {}", p * p, rhs.1))
}

/// `v_p(sum_{k<pn} w - p eps sum_{k<n} w) >= 2 + 2 v_p(n)`, using prefix sums
/// of length at least `p n`.
pub fn check_padic_integrality_with(
    spec: &ConjectureSpec,
    series: &WeightedSeries,
    p: u64,
    n: u64,
) -> CheckOutcome {
    let out = CheckOutcome::new(spec, Some(p), Some(n));
    match applicability(spec, p) {
        Ok(Some((v, why))) => return out.with(v, why),
        Err(e) => return out.with(Verdict::Fail, format!("condition error: {e}")),
        Ok(None) => {}
    }
    if n == 0 {
        return out.with(Verdict::Inapplicable, "n must be positive");
    }
    let len = (p * n) as usize;
    if series.len() < len {
        return out.with(Verdict::Fail, format!("series too short: {} < {len}", series.len()));
    }
    if series.terms()[..len]
        .iter()
        .any(|t| !padic_valuation(t, p).is_at_least(0))
    {
        return out.with(Verdict::Excluded, format!("terms are not {p}-integral"));
    }
    let eps = match spec.epsilon.eval_num(&Env::with_p(p)) {
        Ok(e) => e,
        Err(e) => return out.with(Verdict::Fail, format!("epsilon error: {e}")),
    };
    let d = series.prefix(len) - ExactRational::from_integer(p.into()) * eps * series.prefix(n as usize);
    let vn = crate::exactmath::arith::int_valuation(&BigInt::from(n), p);
    let bound = 2 + 2 * vn;
    let v = padic_valuation(&d, p);
    let mut out = out;
    out.lhs = format!("v_{p}(D) = {v}");
    out.rhs = format!(">= {bound}");
    out.with(Verdict::from_bool(v.is_at_least(bound)), String::new())
}

pub fn check_padic_integrality(spec: &ConjectureSpec, p: u64, n: u64) -> CheckOutcome {
    let series = WeightedSeries::new(spec, (p * n) as usize);
    check_padic_integrality_with(spec, &series, p, n)
}

/// `scale(n) * sum_{k<n} w(k)` lies in the claimed set. For the `Zp` target
/// every prime in `[p_min, p_bound)` satisfying the condition is tested.
pub fn check_divisibility_with(
    spec: &ConjectureSpec,
    series: &WeightedSeries,
    n: u64,
    p_bound: u64,
) -> CheckOutcome {
    let out = CheckOutcome::new(spec, None, Some(n));
    if n == 0 {
        return out.with(Verdict::Inapplicable, "n must be positive");
    }
    if series.len() < n as usize {
        return out.with(Verdict::Fail, format!("series too short: {} < {n}", series.len()));
    }
    let (Some(scale), Some(target)) = (&spec.scale, spec.target) else {
        return out.with(Verdict::Fail, "record lacks scale or target");
    };
    let factor = match scale.eval_num(&Env {
        n: Some(n),
        ..Env::default()
    }) {
        Ok(f) => f,
        Err(e) => return out.with(Verdict::Fail, e.to_string()),
    };
    let value = factor * series.prefix(n as usize);
    let mut out = out;
    out.lhs = value.to_string();
    match target {
        DivTarget::Integer => {
            out.rhs = "Z".into();
            out.with(Verdict::from_bool(value.is_integer()), "")
        }
        DivTarget::PositiveInteger => {
            out.rhs = "Z+".into();
            out.with(Verdict::from_bool(value.is_integer() && value.is_positive()), "")
        }
        DivTarget::PadicInteger => {
            out.rhs = "Zp".into();
            let mut tested = 0usize;
            for p in primes_up_to(p_bound.saturating_sub(1).max(2)) {
                if p >= p_bound {
                    break;
                }
                match applicability(spec, p) {
                    Ok(None) => {}
                    Ok(Some(_)) => continue,
                    Err(e) => return out.with(Verdict::Fail, e.to_string()),
                }
                tested += 1;
                let v = padic_valuation(&value, p);
                if !v.is_at_least(0) {
                    return out.with(Verdict::Fail, format!("v_{p} = {v}"));
                }
            }
            out.with(Verdict::Pass, format!("{tested} primes below {p_bound}"))
        }
    }
}

pub fn check_divisibility(spec: &ConjectureSpec, n: u64, p_bound: u64) -> CheckOutcome {
    let series = WeightedSeries::new(spec, n as usize);
    check_divisibility_with(spec, &series, n, p_bound)
}

/// Case-exhaustiveness at `p`: number of firing branches (including the
/// otherwise branch) and whether exactly one is required. Exactly one is
/// required unless `p` divides a literal of a symbol or modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseAudit {
    pub p: u64,
    pub firing: Vec<String>,
    pub strict: bool,
}

impl CaseAudit {
    pub fn ok(&self) -> bool {
        if self.strict {
            self.firing.len() == 1
        } else {
            self.firing.len() <= 1
        }
    }
}

pub fn audit_cases(spec: &ConjectureSpec, p: u64) -> Result<Option<CaseAudit>> {
    let Some(rule) = &spec.rule else {
        return Ok(None);
    };
    if applicability(spec, p)?.is_some() {
        return Ok(None);
    }
    let env = Env::with_p(p);
    let mut firing = Vec::new();
    let mut literals = Vec::new();
    for (i, case) in rule.cases.iter().enumerate() {
        literals.extend(case.when.arithmetic_literals());
        if case.when.eval_bool(&env)?
            && representation_for(case.target_multiple * p, case.a, case.d, case.norm).is_some()
        {
            firing.push(format!("case {i}"));
        }
    }
    if let Some(o) = &rule.otherwise {
        literals.extend(o.when.arithmetic_literals());
        if o.when.eval_bool(&env)? {
            firing.push("otherwise".into());
        }
    }
    let pb = BigInt::from(p);
    let strict = !literals.iter().any(|l| !l.is_zero() && l.is_multiple_of(&pb));
    Ok(Some(CaseAudit { p, firing, strict }))
}

/// For the firing case at `p`, every representation satisfying the
/// normalization tag gives the same result value.
pub fn symmetry_audit(spec: &ConjectureSpec, p: u64) -> Result<bool> {
    let Some(rule) = &spec.rule else {
        return Ok(true);
    };
    let RuleResolution::Case { index, .. } = resolve_rule(rule, p)? else {
        return Ok(true);
    };
    let case = &rule.cases[index];
    let mut values = all_reps(case.target_multiple * p, case.a, case.d)
        .into_iter()
        .filter(|r| case.norm.satisfied(r.x, r.y))
        .map(|r| {
            case.result.eval_num(&Env {
                p: Some(p),
                x: Some(r.x),
                y: Some(r.y),
                n: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    values.dedup();
    Ok(values.len() == 1)
}

/// Consistency of a p-adic record with a congruence record on the same sum:
/// at `n = 1` the former forces `sum_{k<p} w ≡ p eps b (mod p^2)`, so the
/// latter's right-hand side must agree.
pub fn cross_check(padic: &ConjectureSpec, congruence: &ConjectureSpec, p: u64) -> Option<CheckOutcome> {
    if padic.kind != CheckKind::PadicIntegrality
        || congruence.kind != CheckKind::RhsCongruence
        || (padic.m, &padic.c, &padic.r, &padic.weights)
            != (congruence.m, &congruence.c, &congruence.r, &congruence.weights)
    {
        return None;
    }
    if !matches!(applicability(padic, p), Ok(None)) || !matches!(applicability(congruence, p), Ok(None)) {
        return None;
    }
    let mut out = CheckOutcome::new(congruence, Some(p), Some(1));
    out.spec_id = format!("{}~{}", padic.id, congruence.id);
    out.kind = "cross-check".into();
    let md = p * p;
    let eps = padic.epsilon.eval_num(&Env::with_p(p)).ok()?;
    let implied = ExactRational::from_integer(p.into()) * eps * &padic.weights.1;
    let (Ok(implied), Ok(Some((rhs, _)))) = (reduce_mod(&implied, md), expected_rhs(congruence, p)) else {
        return Some(out.with(Verdict::Excluded, "not reducible mod p^2"));
    };
    out.lhs = implied.value().to_string();
    out.rhs = rhs.value().to_string();
    Some(out.with(Verdict::from_bool(implied == rhs), format!("mod {md}")))
}

/// Convenience for tests and the CLI.
pub fn exact_sum_reduced(spec: &ConjectureSpec, p: u64) -> Result<Residue> {
    reduce_mod(&weighted_sum_exact(spec, p), p * p)
}
