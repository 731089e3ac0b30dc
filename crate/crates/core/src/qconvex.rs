//! Coefficientwise q-log-convexity of polynomial sequences.

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::exactmath::binomial;
use crate::polyfamily::s_poly;
use crate::IntPolynomial;

/// Lowest-degree negative coefficient of `P_{n-1} P_{n+1} - P_n^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvexityWitness {
    pub n: usize,
    pub coefficient_index: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TripleVerdict {
    Pass(IntPolynomial),
    Witness { coefficient_index: usize, value: BigInt },
}

impl TripleVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, TripleVerdict::Pass(_))
    }
}

pub fn qlc_triple(prev: &IntPolynomial, mid: &IntPolynomial, next: &IntPolynomial) -> TripleVerdict {
    let diff = &(prev * next) - &(mid * mid);
    match diff.coeffs().iter().position(|c| c.is_negative()) {
        None => TripleVerdict::Pass(diff),
        Some(i) => TripleVerdict::Witness {
            coefficient_index: i,
            value: diff.coeffs()[i].clone(),
        },
    }
}

/// Registry of polynomial sequences with nonnegative integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum PolySequenceFamily {
    /// `S_n^(m)(q)`
    S { m: u32, start: usize },
    /// `sum_k C(n,k)^3 q^k`
    BinomCubed { start: usize },
    /// `sum_k C(n+k,k)^m q^k`
    ShiftedBinom { m: u32, start: usize },
    /// `sum_k C(n,k)^2 C(n+k,k) q^k`
    Beta { start: usize },
}

impl PolySequenceFamily {
    pub fn start(&self) -> usize {
        match *self {
            PolySequenceFamily::S { start, .. }
            | PolySequenceFamily::BinomCubed { start }
            | PolySequenceFamily::ShiftedBinom { start, .. }
            | PolySequenceFamily::Beta { start } => start,
        }
    }

    pub fn name(&self) -> String {
        match self {
            PolySequenceFamily::S { m, .. } => format!("S{m}"),
            PolySequenceFamily::BinomCubed { .. } => "binom-cubed".into(),
            PolySequenceFamily::ShiftedBinom { m, .. } => format!("shifted-binom{m}"),
            PolySequenceFamily::Beta { .. } => "beta".into(),
        }
    }

    pub fn member(&self, n: usize) -> IntPolynomial {
        let nn = n as u64;
        match *self {
            PolySequenceFamily::S { m, .. } => (*s_poly(m, n)).clone(),
            PolySequenceFamily::BinomCubed { .. } => IntPolynomial::new(
                (0..=n)
                    .map(|k| num_traits::pow(binomial(nn, k as i64), 3))
                    .collect(),
            ),
            PolySequenceFamily::ShiftedBinom { m, .. } => IntPolynomial::new(
                (0..=n)
                    .map(|k| num_traits::pow(binomial(nn + k as u64, k as i64), m as usize))
                    .collect(),
            ),
            PolySequenceFamily::Beta { .. } => IntPolynomial::new(
                (0..=n)
                    .map(|k| {
                        let c = binomial(nn, k as i64);
                        &c * &c * binomial(nn + k as u64, k as i64)
                    })
                    .collect(),
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    pub n: usize,
    pub witness: Option<ConvexityWitness>,
}

/// Checks every middle index `n` in `[max(n_lo, start + 1), n_hi]`; entries
/// come back in increasing `n`.
pub fn qlc_scan(family: PolySequenceFamily, n_lo: usize, n_hi: usize) -> Vec<ScanEntry> {
    let lo = n_lo.max(family.start() + 1);
    if lo > n_hi {
        return Vec::new();
    }
    let polys: Vec<IntPolynomial> = (lo - 1..=n_hi + 1)
        .into_par_iter()
        .map(|n| family.member(n))
        .collect();
    (lo..=n_hi)
        .into_par_iter()
        .map(|n| {
            let i = n - (lo - 1);
            let witness = match qlc_triple(&polys[i - 1], &polys[i], &polys[i + 1]) {
                TripleVerdict::Pass(_) => None,
                TripleVerdict::Witness {
                    coefficient_index,
                    value,
                } => Some(ConvexityWitness {
                    n,
                    coefficient_index,
                    value: value.to_string(),
                }),
            };
            ScanEntry { n, witness }
        })
        .collect()
}
