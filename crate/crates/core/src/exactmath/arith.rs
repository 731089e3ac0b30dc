//! Integer helpers: binomials, Jacobi symbols, primes, valuations and
//! reduction of rationals into `Z/m`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::residue::Residue;
use super::ExactRational;
use crate::error::{Error, Result};

type Row = Arc<Vec<BigInt>>;

fn row_cache() -> &'static RwLock<Vec<Row>> {
    static CACHE: OnceLock<RwLock<Vec<Row>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![Arc::new(vec![BigInt::one()])]))
}

/// Row `n` of Pascal's triangle. Rows are memoized process-wide.
pub fn binomial_row(n: usize) -> Row {
    {
        let rows = row_cache().read().expect("binomial cache poisoned");
        if let Some(row) = rows.get(n) {
            return Arc::clone(row);
        }
    }
    let mut rows = row_cache().write().expect("binomial cache poisoned");
    while rows.len() <= n {
        let prev = rows.last().expect("row 0 seeded");
        let mut next = Vec::with_capacity(prev.len() + 1);
        next.push(BigInt::one());
        for w in prev.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        rows.push(Arc::new(next));
    }
    Arc::clone(&rows[n])
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    binomial_row(n as usize)[k as usize].clone()
}

/// Pascal table modulo `m` for rows `0..=max_n`.
pub fn binomial_table_mod(max_n: usize, m: u64) -> Vec<Vec<u64>> {
    let mut table: Vec<Vec<u64>> = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let mut row = vec![0u64; n + 1];
        row[0] = 1 % m;
        row[n] = 1 % m;
        for k in 1..n {
            row[k] = (table[n - 1][k - 1] + table[n - 1][k]) % m;
        }
        table.push(row);
    }
    table
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i64, n: i64) -> Result<i32> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "Jacobi symbol needs an odd positive bottom, got {n}"
        )));
    }
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    Ok(if n == 1 { t } else { 0 })
}

/// All primes `<= limit`, increasing.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// p-adic valuation; `Infinite` is the valuation of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum PadicValuation {
    Finite(i64),
    Infinite,
}

impl PadicValuation {
    pub fn is_at_least(&self, bound: i64) -> bool {
        match self {
            PadicValuation::Finite(v) => *v >= bound,
            PadicValuation::Infinite => true,
        }
    }
}

impl PartialOrd for PadicValuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PadicValuation {
    fn cmp(&self, other: &Self) -> Ordering {
        use PadicValuation::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => Ordering::Less,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Infinite, Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for PadicValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicValuation::Finite(v) => write!(f, "{v}"),
            PadicValuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Exponent of `p` in a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn padic_valuation(q: &ExactRational, p: u64) -> PadicValuation {
    if q.is_zero() {
        return PadicValuation::Infinite;
    }
    PadicValuation::Finite(int_valuation(q.numer(), p) - int_valuation(q.denom(), p))
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

pub fn big_mod(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m))
        .to_u64()
        .expect("residue fits in u64")
}

/// Image of a rational in `Z/m`.
pub fn reduce_mod(q: &ExactRational, m: u64) -> Result<Residue> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let den = big_mod(q.denom(), m);
    let inv = inverse_mod(den, m).ok_or_else(|| Error::NonInvertibleDenominator {
        denominator: q.denom().to_string(),
        modulus: m.to_string(),
    })?;
    let num = big_mod(q.numer(), m);
    Ok(Residue::new(mul_mod(num, inv, m), m))
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Floor square root by Newton iteration.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    if n.is_zero() {
        return BigInt::zero();
    }
    let mut x = BigInt::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

pub fn perfect_square_root(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(2)..=r + 2).find(|s| s * s == n)
}
