//! When does one maximin-share condition imply another?
//!
//! Write `d' = q*d - r` with `q >= 1` and `0 <= r < d`. Then `(l, d)`
//! dominates `(l', d')` (its share is at least as good for every item set
//! and every monotone subset ordering) exactly when `q*l - min(l, r) >= l'`.
//! When it fails, `d'` identical items separate the two pairs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::pair::Pair;

/// `d' = q*d - r` with `q >= 1`, `0 <= r < d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    pub q: u64,
    pub r: u64,
}

pub fn decompose(d: u32, d_prime: u32) -> Decomposition {
    assert!(d >= 1 && d_prime >= 1, "decompose needs positive part counts");
    let (d, d_prime) = (u64::from(d), u64::from(d_prime));
    let q = d_prime.div_ceil(d);
    Decomposition { q, r: q * d - d_prime }
}

/// Number of items in the `l` smallest parts of the most balanced partition
/// of `d'` identical items into `d` parts: `q*l - min(l, r)`.
pub fn balanced_share(p: Pair, d_prime: u32) -> u64 {
    let Decomposition { q, r } = decompose(p.d(), d_prime);
    let l = u64::from(p.l());
    q * l - l.min(r)
}

pub fn dominates(p: Pair, p_prime: Pair) -> bool {
    balanced_share(p, p_prime.d()) >= u64::from(p_prime.l())
}

/// The special cases in which dominance is immediate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorollaryCase {
    /// Same `d`, larger `l`.
    A,
    /// Same `l`, smaller `d`.
    B,
    /// `(l', d') = (l - r, d - r)` for some `r >= 1`.
    C,
    /// `l/d` is the reduced form of the non-reduced fraction `l'/d'`.
    D,
}

impl fmt::Display for CorollaryCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CorollaryCase::A => "a",
            CorollaryCase::B => "b",
            CorollaryCase::C => "c",
            CorollaryCase::D => "d",
        };
        f.write_str(s)
    }
}

/// First special case (in order a, b, c, d) that applies, if any.
///
/// The cases are stated for `l, l' >= 1` but every one of them still implies
/// dominance when `l'` or `l` is zero, so they are checked for all pairs.
pub fn corollary_case(p: Pair, p_prime: Pair) -> Option<CorollaryCase> {
    let (l, d, lp, dp) = (p.l(), p.d(), p_prime.l(), p_prime.d());
    if l > lp && d == dp {
        return Some(CorollaryCase::A);
    }
    if l == lp && d < dp {
        return Some(CorollaryCase::B);
    }
    if l > lp && d > dp && l - lp == d - dp {
        return Some(CorollaryCase::C);
    }
    let g = num_integer::gcd(lp, dp);
    if g > 1 && lp / g == l && dp / g == d {
        return Some(CorollaryCase::D);
    }
    None
}

/// `d'` unit-valued items, on which `p`'s share is strictly worse than
/// `p_prime`'s.
pub fn non_dominance_witness(p: Pair, p_prime: Pair) -> Result<Instance> {
    if dominates(p, p_prime) {
        return Err(Error::NoCounterexample {
            l: p.l(),
            d: p.d(),
            l_prime: p_prime.l(),
            d_prime: p_prime.d(),
        });
    }
    Ok(Instance::unit(p_prime.d() as usize))
}

/// True iff `p_prime = (l + h, d + h)` for some `h >= 0` and `m <= d`; then
/// on any instance of at most `m` items `p`'s share is at least `p_prime`'s,
/// whether or not `p` dominates `p_prime` in general.
pub fn bundle_size_reduction_applies(p: Pair, p_prime: Pair, m: usize) -> bool {
    p_prime.l() >= p.l()
        && p_prime.d() >= p.d()
        && p_prime.l() - p.l() == p_prime.d() - p.d()
        && m <= p.d() as usize
}
