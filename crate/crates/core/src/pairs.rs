//! The minimal set of maximin-share conditions for an entitlement.
//!
//! An agent with entitlement `a` would naively have to compare her bundle to
//! every `l`-out-of-`d` share with `l/d <= a`. With `m` items only `d <= m`
//! matters, only the largest admissible `l` for each `d` matters, and of
//! those pairs only the ones not dominated by another survive.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dominance::{corollary_case, decompose, dominates, CorollaryCase};
use crate::error::{Error, Result};
use crate::pair::Pair;
use crate::rational::{rational_floor_mul, Rational};

/// Surviving conditions, sorted by `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSet {
    pub pairs: Vec<Pair>,
    pub entitlement: Rational,
    pub m: usize,
}

/// One filtered candidate and the surviving pair that dominates it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Removal {
    pub removed: Pair,
    pub by: Pair,
    pub q: u64,
    pub r: u64,
    /// Special case explaining the dominance, when one applies.
    pub case: Option<CorollaryCase>,
}

impl fmt::Display for Removal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} is filtered out by {} (with q={}, r={})",
            self.removed, self.by, self.q, self.r
        )
    }
}

/// `(l_d, d)` for each `d` in `1..=m`, where `l_d` is the largest integer
/// with `l_d / d <= a`.
pub fn candidate_pairs(a: &Rational, m: usize) -> Result<Vec<Pair>> {
    if m == 0 {
        return Err(Error::InvalidEntitlement(a.to_string(), "item count must be at least 1"));
    }
    let d_max = u32::try_from(m).map_err(|_| Error::Parse(format!("item count {m} too large")))?;
    (1..=d_max)
        .map(|d| {
            let l = rational_floor_mul(a, d.into())?;
            Pair::new(l as u32, d)
        })
        .collect()
}

pub fn non_dominated_pairs(a: &Rational, m: usize) -> Result<PairSet> {
    let candidates = candidate_pairs(a, m)?;
    let (pairs, _) = filter(&candidates);
    Ok(PairSet {
        pairs,
        entitlement: a.clone(),
        m,
    })
}

/// Every removal with the pair responsible for it, in order of `d`.
pub fn filtration_trace(a: &Rational, m: usize) -> Result<Vec<Removal>> {
    let candidates = candidate_pairs(a, m)?;
    Ok(filter(&candidates).1)
}

/// `p` knocks out `c` when it dominates `c` and either `c` does not dominate
/// it back or, for mutually dominating pairs, `p` has the smaller `d`. This
/// is a strict partial order, so its maximal elements are well defined and
/// every other candidate is knocked out by one of them.
fn knocks_out(p: Pair, c: Pair) -> bool {
    p != c && dominates(p, c) && (!dominates(c, p) || p.d() < c.d())
}

fn filter(candidates: &[Pair]) -> (Vec<Pair>, Vec<Removal>) {
    let survivors: Vec<Pair> = candidates
        .iter()
        .copied()
        .filter(|&c| !candidates.iter().any(|&p| knocks_out(p, c)))
        .collect();

    let removals = candidates
        .iter()
        .copied()
        .filter(|c| !survivors.contains(c))
        .map(|c| {
            // Prefer a remover whose dominance is one of the immediate
            // special cases, then the smallest d.
            let by = survivors
                .iter()
                .copied()
                .filter(|&s| knocks_out(s, c))
                .min_by_key(|&s| (corollary_case(s, c).is_none(), s.d()))
                .expect("a maximal element knocks out every non-maximal candidate");
            let dec = decompose(by.d(), c.d());
            Removal {
                removed: c,
                by,
                q: dec.q,
                r: dec.r,
                case: corollary_case(by, c),
            }
        })
        .collect();

    (survivors, removals)
}
