//! Numerical confirmation of series for `1/pi` built from `S_k^(2)(c)` and
//! from Apéry numbers.
//!
//! Partial sums are exact (rational, or in `Q(sqrt 5)` for the golden-ratio
//! series). Truncation is chosen by an empirical ratio test: with `rho` the
//! largest ratio `|t_{k+1}/t_k|` over a trailing window, the tail after `t_N`
//! is bounded by `|t_N| rho / (1 - rho)`. That bound assumes the ratios stay
//! below `rho`, so reports label it a heuristic tail.

pub mod constants;
pub mod interval;
pub mod quadratic;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

pub use constants::{pi_highprec, pi_highprec_gauss, sqrt_highprec};
pub use interval::HighPrecisionReal;
pub use quadratic::QuadraticNumber;

use crate::error::{Error, Result};
use crate::polyfamily::{apery, s_value};
use crate::ExactRational;

/// Ratios inspected when estimating `rho`.
pub const RATIO_WINDOW: usize = 10;
/// Extra decimal digits carried beyond the requested precision.
pub const GUARD_DIGITS: u32 = 10;
/// Empirical ratios at or above `1 - DIVERGENCE_MARGIN` abort the evaluation.
pub const DIVERGENCE_MARGIN: f64 = 1e-3;
/// Leading terms whose ratios are ignored; early ratios can exceed 1
/// before the geometric regime sets in.
pub const BURN_IN: usize = 10;
/// Hard cap on the number of terms summed.
pub const MAX_TERMS: usize = 2000;
pub const TAIL_LABEL: &str = "heuristic tail";
/// Default precision used by the acceptance run.
pub const DEFAULT_DIGITS: u32 = 25;

/// How the `k`-th term is generated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesKind {
    /// `(a k + b) S_k^(2)(c) / m^k`.
    Rational {
        a: i64,
        b: i64,
        c: ExactRational,
        m: i64,
    },
    /// `(20k + 10 - 3 sqrt5) A_k base^k` with `base = (161 - 72 sqrt5) = phi^-12`.
    GoldenRatio { base: QuadraticNumber },
}

/// A series together with its conjectured value `sum coeff_i sqrt(d_i) / pi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTarget {
    pub id: String,
    pub label: String,
    pub kind: SeriesKind,
    /// Pairs `(coeff, d)`.
    pub closed_form: Vec<(ExactRational, ExactRational)>,
}

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n.into(), d.into())
}

impl SeriesTarget {
    /// `sum (7k+1) S_k^(2)(1/11) / 9^k = 5445 / (104 sqrt39 pi)`.
    pub fn eq911() -> Self {
        SeriesTarget {
            id: "eq911".into(),
            label: "(7k+1) S_k(1/11) / 9^k".into(),
            kind: SeriesKind::Rational {
                a: 7,
                b: 1,
                c: q(1, 11),
                m: 9,
            },
            closed_form: vec![(q(1815, 1352), q(39, 1))],
        }
    }

    /// `sum (1365k+181) S_k^(2)(1/18) / 16^k = 1377 / (sqrt2 pi)`.
    pub fn eq18() -> Self {
        SeriesTarget {
            id: "eq18".into(),
            label: "(1365k+181) S_k(1/18) / 16^k".into(),
            kind: SeriesKind::Rational {
                a: 1365,
                b: 181,
                c: q(1, 18),
                m: 16,
            },
            closed_form: vec![(q(1377, 2), q(2, 1))],
        }
    }

    /// `sum (20k+10-3 sqrt5) A_k / phi^(12k) = (20 sqrt3 + 9 sqrt15) / (6 pi)`.
    pub fn sato() -> Self {
        SeriesTarget {
            id: "sato".into(),
            label: "(20k+10-3sqrt5) A_k / phi^(12k)".into(),
            kind: SeriesKind::GoldenRatio {
                base: QuadraticNumber::from_ints(161, -72),
            },
            closed_form: vec![(q(10, 3), q(3, 1)), (q(3, 2), q(15, 1))],
        }
    }

    pub fn builtin() -> Vec<SeriesTarget> {
        vec![Self::eq911(), Self::eq18(), Self::sato()]
    }

    pub fn by_id(id: &str) -> Option<SeriesTarget> {
        Self::builtin().into_iter().find(|t| t.id == id)
    }

    /// Precision requested by default for this target.
    pub fn default_digits(&self) -> u32 {
        match self.kind {
            SeriesKind::Rational { .. } => DEFAULT_DIGITS,
            SeriesKind::GoldenRatio { .. } => 15,
        }
    }

    /// Exact `k`-th term.
    pub fn term(&self, k: usize) -> SeriesValue {
        match &self.kind {
            SeriesKind::Rational { a, b, c, m } => {
                let weight = ExactRational::from_integer(BigInt::from(a * k as i64 + b));
                let base = ExactRational::from_integer(num_traits::pow(BigInt::from(*m), k));
                SeriesValue::Rational(weight * s_value(2, k, c) / base)
            }
            SeriesKind::GoldenRatio { base } => {
                let weight = QuadraticNumber::from_ints(20 * k as i64 + 10, -3);
                let a_k = ExactRational::from_integer(apery(k));
                SeriesValue::Quadratic(weight.mul(&base.pow(k as u64)).scale(&a_k))
            }
        }
    }

    /// `log10 |t_k|` in floating point, used only to steer truncation.
    pub fn term_log10(&self, k: usize) -> f64 {
        match &self.kind {
            SeriesKind::Rational { a, b, c, m } => {
                let weight = ((a * k as i64 + b) as f64).abs().log10();
                weight + log10_rational(&s_value(2, k, c)) - k as f64 * (*m as f64).abs().log10()
            }
            SeriesKind::GoldenRatio { base } => {
                let weight = (20.0 * k as f64 + 10.0 - 3.0 * 5f64.sqrt()).abs().log10();
                let base_mag = log10_abs_quadratic(base);
                weight + log10_bigint(&apery(k)) + k as f64 * base_mag
            }
        }
    }

    /// Value of the closed form, with radius below `10^-digits`.
    pub fn closed_form_enclosure(&self, digits: u32) -> Result<HighPrecisionReal> {
        let work = digits + 5;
        let mut acc = HighPrecisionReal::from_rational(&ExactRational::zero(), work);
        for (coeff, d) in &self.closed_form {
            acc = acc.add(&sqrt_highprec(d, work).scale_by_rational(coeff));
        }
        Ok(acc.div(&pi_highprec(work))?.rescale(digits))
    }
}

impl fmt::Display for SeriesTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.id, self.label)
    }
}

fn log10_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits < 1000 {
        return n.magnitude().to_f64().unwrap_or(f64::INFINITY).log10();
    }
    let shift = bits - 64;
    let top = (n.magnitude() >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

fn log10_rational(x: &ExactRational) -> f64 {
    log10_bigint(x.numer()) - log10_bigint(x.denom())
}

fn log10_abs_quadratic(x: &QuadraticNumber) -> f64 {
    let v = x.a.to_f64().unwrap_or(f64::NAN) + x.b.to_f64().unwrap_or(f64::NAN) * 5f64.sqrt();
    if v != 0.0 && v.abs() > 1e-6 {
        return v.abs().log10();
    }
    // Heavy cancellation: use the norm, |x| = |N(x)| / |conjugate(x)|.
    let conj = x.a.to_f64().unwrap_or(f64::NAN) - x.b.to_f64().unwrap_or(f64::NAN) * 5f64.sqrt();
    log10_rational(&x.norm()) - conj.abs().log10()
}

/// An exact partial sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesValue {
    Rational(ExactRational),
    Quadratic(QuadraticNumber),
}

impl SeriesValue {
    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (SeriesValue::Rational(a), SeriesValue::Rational(b)) => SeriesValue::Rational(a + b),
            (SeriesValue::Quadratic(a), SeriesValue::Quadratic(b)) => SeriesValue::Quadratic(a.add(b)),
            (SeriesValue::Rational(a), SeriesValue::Quadratic(b))
            | (SeriesValue::Quadratic(b), SeriesValue::Rational(a)) => {
                SeriesValue::Quadratic(b.add(&QuadraticNumber::new(a.clone(), ExactRational::zero())))
            }
        }
    }

    pub fn to_interval(&self, scale: u32) -> HighPrecisionReal {
        match self {
            SeriesValue::Rational(r) => HighPrecisionReal::from_rational(r, scale),
            SeriesValue::Quadratic(x) => x.to_interval(scale),
        }
    }

    pub fn as_rational(&self) -> Option<&ExactRational> {
        match self {
            SeriesValue::Rational(r) => Some(r),
            SeriesValue::Quadratic(_) => None,
        }
    }

    pub fn as_quadratic(&self) -> Option<&QuadraticNumber> {
        match self {
            SeriesValue::Quadratic(x) => Some(x),
            SeriesValue::Rational(_) => None,
        }
    }
}

impl fmt::Display for SeriesValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesValue::Rational(r) => write!(f, "{r}"),
            SeriesValue::Quadratic(x) => write!(f, "{x}"),
        }
    }
}

/// `sum_{k=0}^{N} t_k`, exactly. Terms are generated in parallel.
pub fn series_partial_sum(target: &SeriesTarget, n: usize) -> SeriesValue {
    let terms: Vec<SeriesValue> = (0..=n).into_par_iter().map(|k| target.term(k)).collect();
    let zero = match target.kind {
        SeriesKind::Rational { .. } => SeriesValue::Rational(ExactRational::zero()),
        SeriesKind::GoldenRatio { .. } => SeriesValue::Quadratic(QuadraticNumber::zero()),
    };
    terms.iter().fold(zero, |acc, t| acc.add(t))
}

/// The empirical ratio `rho` over the window ending at term `n` and the
/// resulting tail estimate `log10(|t_n| rho / (1 - rho))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub rho: f64,
    pub log10_bound: f64,
}

fn tail_from_logs(logs: &[f64]) -> Option<TailEstimate> {
    let n = logs.len().checked_sub(1)?;
    if n < BURN_IN + RATIO_WINDOW {
        return None;
    }
    let max_log_ratio = (n - RATIO_WINDOW..n)
        .map(|i| logs[i + 1] - logs[i])
        .fold(f64::NEG_INFINITY, f64::max);
    let rho = 10f64.powf(max_log_ratio);
    let log10_bound = if rho >= 1.0 {
        f64::INFINITY
    } else {
        logs[n] + (rho / (1.0 - rho)).log10()
    };
    Some(TailEstimate { rho, log10_bound })
}

/// Tail estimate after term `n`; needs `n >= BURN_IN + RATIO_WINDOW`.
pub fn tail_estimate(target: &SeriesTarget, n: usize) -> Result<TailEstimate> {
    let logs: Vec<f64> = (0..=n).into_par_iter().map(|k| target.term_log10(k)).collect();
    tail_from_logs(&logs).ok_or_else(|| {
        Error::InvalidArgument(format!("tail estimate needs at least {} terms", BURN_IN + RATIO_WINDOW + 1))
    })
}

#[derive(Debug, Clone)]
pub struct SeriesReport {
    pub id: String,
    pub digits: u32,
    /// Index of the last term summed.
    pub terms_used: usize,
    pub lhs: HighPrecisionReal,
    pub rhs: HighPrecisionReal,
    pub agreed_digits: i64,
    pub rho: f64,
    pub tail_log10: f64,
    pub passed: bool,
}

#[derive(Serialize)]
struct SeriesReportView<'a> {
    id: &'a str,
    digits: u32,
    terms_used: usize,
    lhs: String,
    rhs: String,
    agreed_digits: i64,
    rho: f64,
    tail_log10: f64,
    tail: &'static str,
    passed: bool,
}

impl Serialize for SeriesReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesReportView {
            id: &self.id,
            digits: self.digits,
            terms_used: self.terms_used,
            lhs: self.lhs.to_string(),
            rhs: self.rhs.to_string(),
            agreed_digits: self.agreed_digits,
            rho: self.rho,
            tail_log10: self.tail_log10,
            tail: TAIL_LABEL,
            passed: self.passed,
        }
        .serialize(s)
    }
}

impl fmt::Display for SeriesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: N={} rho={:.4} {} 1e{:.1}; agreed {} of {} digits; lhs {}; rhs {}",
            self.id,
            self.terms_used,
            self.rho,
            TAIL_LABEL,
            self.tail_log10,
            self.agreed_digits,
            self.digits,
            self.lhs,
            self.rhs
        )
    }
}

const CHUNK: usize = 8;

/// Sums until the estimated tail drops below `10^-(digits + GUARD_DIGITS)` and
/// compares the result with the closed form.
pub fn evaluate_and_compare(target: &SeriesTarget, digits: u32) -> Result<SeriesReport> {
    if digits == 0 {
        return Err(Error::InvalidArgument("digits must be at least 1".into()));
    }
    let scale = digits + GUARD_DIGITS;
    let goal = -(scale as f64);
    let mut logs: Vec<f64> = Vec::new();
    let mut terms: Vec<SeriesValue> = Vec::new();
    let (last, estimate) = 'search: loop {
        let start = terms.len();
        if start >= MAX_TERMS {
            let rho = tail_from_logs(&logs).map_or(f64::NAN, |t| t.rho);
            return Err(Error::DivergenceSuspected {
                ratio: rho,
                terms: start,
            });
        }
        let chunk: Vec<(SeriesValue, f64)> = (start..start + CHUNK)
            .into_par_iter()
            .map(|k| (target.term(k), target.term_log10(k)))
            .collect();
        for (t, l) in chunk {
            terms.push(t);
            logs.push(l);
            if let Some(est) = tail_from_logs(&logs) {
                if est.rho >= 1.0 - DIVERGENCE_MARGIN {
                    return Err(Error::DivergenceSuspected {
                        ratio: est.rho,
                        terms: logs.len(),
                    });
                }
                if est.log10_bound < goal {
                    break 'search (logs.len() - 1, est);
                }
            }
        }
    };
    terms.truncate(last + 1);
    let zero = match target.kind {
        SeriesKind::Rational { .. } => SeriesValue::Rational(ExactRational::zero()),
        SeriesKind::GoldenRatio { .. } => SeriesValue::Quadratic(QuadraticNumber::zero()),
    };
    let sum = terms.iter().fold(zero, |acc, t| acc.add(t));

    // The tail is below one unit in the last place at this scale.
    let partial = sum.to_interval(scale);
    let lhs = HighPrecisionReal::new(
        partial.mantissa().clone(),
        partial.radius() + BigInt::from(1),
        scale,
    );
    let rhs = target.closed_form_enclosure(scale)?;
    let agreed = lhs.agreed_digits(&rhs);
    Ok(SeriesReport {
        id: target.id.clone(),
        digits,
        terms_used: last,
        passed: lhs.overlaps(&rhs) && agreed >= digits as i64,
        lhs,
        rhs,
        agreed_digits: agreed,
        rho: estimate.rho,
        tail_log10: estimate.log10_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn partial_sum_examples() {
        assert_eq!(
            series_partial_sum(&SeriesTarget::eq911(), 0),
            SeriesValue::Rational(rat(1, 1))
        );
        // S_1^(2)(x) = 1 + 2x + 2x^2, so S_1^(2)(1/18) = 181/162.
        let expected = rat(181, 1) + rat(1546, 1) * rat(181, 162) / rat(16, 1);
        assert_eq!(
            series_partial_sum(&SeriesTarget::eq18(), 1),
            SeriesValue::Rational(expected)
        );
        assert_eq!(
            series_partial_sum(&SeriesTarget::sato(), 0),
            SeriesValue::Quadratic(QuadraticNumber::from_ints(10, -3))
        );
    }

    #[test]
    fn closed_forms_match_stated_values() {
        let rhs = SeriesTarget::eq911().closed_form_enclosure(20).unwrap();
        let f = 5445.0 / (104.0 * 39f64.sqrt() * std::f64::consts::PI);
        assert!((rhs.to_f64() - f).abs() < 1e-12);
        let rhs = SeriesTarget::eq18().closed_form_enclosure(20).unwrap();
        let f = 1377.0 / (2f64.sqrt() * std::f64::consts::PI);
        assert!((rhs.to_f64() - f).abs() < 1e-9);
        let rhs = SeriesTarget::sato().closed_form_enclosure(20).unwrap();
        let f = (20.0 * 3f64.sqrt() + 9.0 * 15f64.sqrt()) / (6.0 * std::f64::consts::PI);
        assert!((rhs.to_f64() - f).abs() < 1e-12);
    }

    #[test]
    fn builtin_targets_agree() {
        for t in SeriesTarget::builtin() {
            let r = evaluate_and_compare(&t, t.default_digits()).unwrap();
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn divergent_series_is_reported() {
        let t = SeriesTarget {
            id: "slow".into(),
            label: "diverges".into(),
            kind: SeriesKind::Rational {
                a: 1,
                b: 1,
                c: rat(1, 1),
                m: 1,
            },
            closed_form: vec![(rat(1, 1), rat(1, 1))],
        };
        assert!(matches!(
            evaluate_and_compare(&t, 5),
            Err(Error::DivergenceSuspected { .. })
        ));
    }

    #[test]
    fn tail_shrinks() {
        for t in SeriesTarget::builtin() {
            assert!(tail_estimate(&t, BURN_IN + RATIO_WINDOW - 1).is_err());
            let a = tail_estimate(&t, 20).unwrap();
            let b = tail_estimate(&t, 30).unwrap();
            assert!(b.log10_bound < a.log10_bound);
        }
    }
}
