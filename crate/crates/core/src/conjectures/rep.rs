//! Representations `target = a x^2 + d y^2` and their normalization.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::arith::perfect_square_root;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Representation {
    pub x: i64,
    pub y: i64,
    pub a: u64,
    pub d: u64,
    pub target: u64,
}

impl Representation {
    pub fn holds(&self) -> bool {
        let (x, y) = (self.x as i128, self.y as i128);
        self.a as i128 * x * x + self.d as i128 * y * y == self.target as i128
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}={}*{}^2+{}*{}^2",
            self.target, self.a, self.x, self.d, self.y
        )
    }
}

/// First solution with the smallest `x >= 0` and `y >= 0`.
pub fn solve_rep(target: u64, a: u64, d: u64) -> Option<Representation> {
    all_nonnegative_reps(target, a, d).into_iter().next()
}

fn all_nonnegative_reps(target: u64, a: u64, d: u64) -> Vec<Representation> {
    let mut out = Vec::new();
    if a == 0 || d == 0 {
        return out;
    }
    let mut x = 0u64;
    while a * x * x <= target {
        let rest = target - a * x * x;
        if rest.is_multiple_of(d) {
            if let Some(y) = perfect_square_root(rest / d) {
                out.push(Representation {
                    x: x as i64,
                    y: y as i64,
                    a,
                    d,
                    target,
                });
            }
        }
        x += 1;
    }
    out
}

/// Every signed solution, including swaps when `a == d`.
pub fn all_reps(target: u64, a: u64, d: u64) -> Vec<Representation> {
    let mut out = Vec::new();
    for r in all_nonnegative_reps(target, a, d) {
        for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let v = Representation {
                x: sx * r.x,
                y: sy * r.y,
                ..r
            };
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// Side condition that pins down which solution a result refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NormTag {
    None,
    OddX,
    ThreeDividesY,
    XEqYMod3,
    FiveDividesY,
    XEqYMod5,
}

impl NormTag {
    pub const ALL: [NormTag; 6] = [
        NormTag::None,
        NormTag::OddX,
        NormTag::ThreeDividesY,
        NormTag::XEqYMod3,
        NormTag::FiveDividesY,
        NormTag::XEqYMod5,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            NormTag::None => "none",
            NormTag::OddX => "odd-x",
            NormTag::ThreeDividesY => "3|y",
            NormTag::XEqYMod3 => "x=y mod 3",
            NormTag::FiveDividesY => "5|y",
            NormTag::XEqYMod5 => "x=y mod 5",
        }
    }

    pub fn satisfied(&self, x: i64, y: i64) -> bool {
        match self {
            NormTag::None => true,
            NormTag::OddX => x.rem_euclid(2) == 1,
            NormTag::ThreeDividesY => y % 3 == 0 && x % 3 != 0,
            NormTag::XEqYMod3 => (x - y).rem_euclid(3) == 0 && x % 3 != 0,
            NormTag::FiveDividesY => y % 5 == 0 && x % 5 != 0,
            NormTag::XEqYMod5 => (x - y).rem_euclid(5) == 0 && x % 5 != 0,
        }
    }
}

impl FromStr for NormTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        NormTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown normalization `{s}`"))
    }
}

impl fmt::Display for NormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Applies sign changes (and a swap when `a == d`) until `tag` holds,
/// preferring `x >= 0`, then `y >= 0`.
pub fn normalize_rep(rep: Representation, tag: NormTag) -> Result<Representation> {
    let mut pairs = vec![(rep.x, rep.y)];
    if rep.a == rep.d {
        pairs.push((rep.y, rep.x));
    }
    let mut best: Option<Representation> = None;
    for (x0, y0) in pairs {
        for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let (x, y) = (sx * x0, sy * y0);
            if !tag.satisfied(x, y) {
                continue;
            }
            let cand = Representation { x, y, ..rep };
            let key = |r: &Representation| (r.x < 0, r.y < 0);
            if best.as_ref().is_none_or(|b| key(&cand) < key(b)) {
                best = Some(cand);
            }
        }
    }
    best.ok_or_else(|| Error::NormalizationImpossible {
        x: rep.x,
        y: rep.y,
        rule: tag.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(x: i64, y: i64, a: u64, d: u64) -> Representation {
        Representation {
            x,
            y,
            a,
            d,
            target: (a as i64 * x * x + d as i64 * y * y) as u64,
        }
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_rep(41, 1, 5), Some(rep(6, 1, 1, 5)));
        assert_eq!(solve_rep(13, 1, 1), Some(rep(2, 3, 1, 1)));
        assert_eq!(solve_rep(7, 1, 1), None);
        assert_eq!(solve_rep(2 * 3, 1, 5), Some(rep(1, 1, 1, 5)));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_rep(rep(2, 3, 1, 1), NormTag::OddX).unwrap(), rep(3, 2, 1, 1));
        assert_eq!(normalize_rep(rep(6, 1, 1, 5), NormTag::None).unwrap(), rep(6, 1, 1, 5));
        // 13 = 2^2 + 3^2: 3 | 3, so 3|y needs the swap
        assert_eq!(
            normalize_rep(rep(3, 2, 1, 1), NormTag::ThreeDividesY).unwrap(),
            rep(2, 3, 1, 1)
        );
        // 5 = 1 + 4: 1 ≡ -2 mod 3
        assert_eq!(normalize_rep(rep(1, 2, 1, 1), NormTag::XEqYMod3).unwrap(), rep(1, -2, 1, 1));
        assert!(matches!(
            normalize_rep(rep(2, 3, 1, 1), NormTag::XEqYMod3),
            Err(Error::NormalizationImpossible { .. })
        ));
    }

    #[test]
    fn all_reps_counts() {
        // 5 = (±1)^2 + (±2)^2 and swapped
        assert_eq!(all_reps(5, 1, 1).len(), 8);
        assert_eq!(all_reps(41, 1, 5).len(), 4);
        assert!(all_reps(41, 1, 5).iter().all(|r| r.holds()));
    }

    #[test]
    fn tag_parsing() {
        for t in NormTag::ALL {
            assert_eq!(t.as_str().parse::<NormTag>().unwrap(), t);
        }
        assert!("odd".parse::<NormTag>().is_err());
    }
}
