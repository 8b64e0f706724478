//! Exact `l`-out-of-`d` maximin shares under the additive ordering.
//!
//! Under an additive ordering the worst union of `l` parts is the union of
//! the `l` parts with the smallest sums, so the share of a partition reduces
//! to [`min_l_union`] of its part sums and the maximin share is the best such
//! value over all partitions into `d` (possibly empty) parts.
//!
//! [`mms`] finds it with a depth-first branch and bound over item-to-part
//! assignments (items in non-increasing order, parts opened in order, equal
//! items placed in non-decreasing parts). [`mms_cardinality`] is the closed
//! form for unit-valued items, and [`oracle::brute_force_mms`] is the
//! unpruned reference used by the tests.

pub mod oracle;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, Value};
use crate::pair::Pair;
use crate::partition::PartitionAssignment;

/// Size bound beyond which the exact search refuses to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    pub max_items: usize,
    pub max_parts: usize,
}

impl SearchLimits {
    pub const DEFAULT_MAX_ITEMS: usize = 16;
    pub const DEFAULT_MAX_PARTS: usize = 10;

    pub fn unbounded() -> Self {
        SearchLimits {
            max_items: usize::MAX,
            max_parts: usize::MAX,
        }
    }

    pub(crate) fn check(&self, items: usize, parts: usize) -> Result<()> {
        if items > self.max_items || parts > self.max_parts {
            return Err(Error::InstanceTooLarge {
                items,
                parts,
                max_items: self.max_items,
                max_parts: self.max_parts,
            });
        }
        Ok(())
    }
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_items: Self::DEFAULT_MAX_ITEMS,
            max_parts: Self::DEFAULT_MAX_PARTS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MmsResult {
    pub pair: Pair,
    pub value: Value,
    /// An optimal partition; its `l` smallest part sums add up to `value`.
    pub witness: PartitionAssignment,
}

impl MmsResult {
    /// Recomputes the share of the witness partition.
    pub fn witness_value(&self, instance: &Instance) -> Result<Value> {
        let sums = self.witness.part_sums(instance)?;
        min_l_union(&sums, self.pair.l() as usize)
    }
}

/// Sum of the `l` smallest entries of `part_sums`.
pub fn min_l_union(part_sums: &[Value], l: usize) -> Result<Value> {
    if l > part_sums.len() {
        return Err(Error::UnionOutOfRange {
            l,
            parts: part_sums.len(),
        });
    }
    let mut sorted = part_sums.to_vec();
    sorted.sort_unstable();
    Ok(Value(sorted[..l].iter().map(|v| v.0).sum()))
}

/// The `l`-out-of-`d` maximin share with the default [`SearchLimits`].
pub fn mms(instance: &Instance, pair: Pair) -> Result<MmsResult> {
    mms_with_limits(instance, pair, &SearchLimits::default())
}

pub fn mms_with_limits(instance: &Instance, pair: Pair, limits: &SearchLimits) -> Result<MmsResult> {
    let m = instance.len();
    let (l, d) = (pair.l() as usize, pair.d() as usize);

    // Degenerate cases need no search: the empty union, or the union of
    // every part, is the same for all partitions.
    if l == 0 || l == d || m == 0 {
        let value = if l == d { instance.total() } else { Value::ZERO };
        return Ok(MmsResult {
            pair,
            value,
            witness: PartitionAssignment::new(vec![0; m], d)?,
        });
    }
    limits.check(m, d)?;

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| instance.items()[b].cmp(&instance.items()[a]).then(a.cmp(&b)));
    let items: Vec<u64> = order.iter().map(|&i| instance.items()[i].0).collect();

    let (best, assignment) = Search::new(&items, l, d).run();

    let mut part_of = vec![0; m];
    for (pos, &orig) in order.iter().enumerate() {
        part_of[orig] = assignment[pos];
    }
    Ok(MmsResult {
        pair,
        value: Value(best),
        witness: PartitionAssignment::new(part_of, d)?,
    })
}

struct Search<'a> {
    items: &'a [u64],
    l: usize,
    d: usize,
    /// `suffix[i]` = sum of `items[i..]`.
    suffix: Vec<u64>,
    sums: Vec<u64>,
    current: Vec<usize>,
    scratch: Vec<u64>,
    best: Option<u64>,
    best_assignment: Vec<usize>,
    /// Value of a greedy partition; the optimum is at least this.
    floor: u64,
    /// floor(l * total / d): no partition can exceed it.
    ceiling: u64,
}

impl<'a> Search<'a> {
    fn new(items: &'a [u64], l: usize, d: usize) -> Self {
        let m = items.len();
        let mut suffix = vec![0u64; m + 1];
        for i in (0..m).rev() {
            suffix[i] = suffix[i + 1] + items[i];
        }
        let ceiling = ((l as u128 * suffix[0] as u128) / d as u128) as u64;
        let floor = greedy_share(items, l, d);
        Search {
            items,
            l,
            d,
            suffix,
            sums: vec![0; d],
            current: vec![0; m],
            scratch: Vec::with_capacity(d),
            best: None,
            best_assignment: vec![0; m],
            floor,
            ceiling,
        }
    }

    fn run(mut self) -> (u64, Vec<usize>) {
        self.descend(0, 0);
        let best = self.best.expect("the greedy value is always reachable");
        (best, self.best_assignment)
    }

    /// Smallest value a leaf must reach to replace the incumbent. Before any
    /// leaf is accepted this is the greedy value, so the first optimal leaf
    /// in search order is never pruned and later ties never displace it.
    fn threshold(&self) -> u64 {
        match self.best {
            Some(b) => b + 1,
            None => self.floor,
        }
    }

    fn done(&self) -> bool {
        self.best == Some(self.ceiling)
    }

    /// Upper bound on the share of any completion of the current node: for
    /// each `k >= l`, the `l` smallest final sums are at most the `l`
    /// smallest among the `k` currently-smallest parts, which total at most
    /// their current sum plus everything still unassigned.
    fn upper_bound(&mut self, remaining: u64) -> u64 {
        self.scratch.clear();
        self.scratch.extend_from_slice(&self.sums);
        self.scratch.sort_unstable();
        let l = self.l as u128;
        let mut prefix: u128 = self.scratch[..self.l].iter().map(|&s| s as u128).sum();
        let mut bound = prefix + remaining as u128;
        for k in self.l + 1..=self.d {
            prefix += self.scratch[k - 1] as u128;
            bound = bound.min(l * (prefix + remaining as u128) / k as u128);
        }
        bound as u64
    }

    fn leaf_value(&mut self) -> u64 {
        self.scratch.clear();
        self.scratch.extend_from_slice(&self.sums);
        self.scratch.sort_unstable();
        self.scratch[..self.l].iter().sum()
    }

    fn descend(&mut self, i: usize, opened: usize) {
        if i == self.items.len() {
            let value = self.leaf_value();
            if value >= self.threshold() {
                self.best = Some(value);
                self.best_assignment.copy_from_slice(&self.current);
            }
            return;
        }
        if self.upper_bound(self.suffix[i]) < self.threshold() {
            return;
        }
        let item = self.items[i];
        let first = if i > 0 && self.items[i - 1] == item {
            self.current[i - 1]
        } else {
            0
        };
        let last = opened.min(self.d - 1);
        for p in first..=last {
            self.sums[p] += item;
            self.current[i] = p;
            self.descend(i + 1, opened.max(p + 1));
            self.sums[p] -= item;
            if self.done() {
                return;
            }
        }
    }
}

/// Share of the partition built by placing each item (largest first) into
/// the currently lightest part.
fn greedy_share(items: &[u64], l: usize, d: usize) -> u64 {
    let mut sums = vec![0u64; d];
    for &item in items {
        let lightest = (0..d).min_by_key(|&p| (sums[p], p)).expect("d >= 1");
        sums[lightest] += item;
    }
    sums.sort_unstable();
    sums[..l].iter().sum()
}

/// The maximin share of `m` unit-valued items (the cardinality ordering).
///
/// Writing `m = q*d - r` with `q = ceil(m/d)` and `0 <= r < d`, the most
/// balanced partition has `r` parts of `q - 1` items and `d - r` parts of
/// `q` items, and its `l` smallest parts hold `q*l - min(l, r)` items.
pub fn mms_cardinality(m: u64, pair: Pair) -> u64 {
    let (l, d) = (u64::from(pair.l()), u64::from(pair.d()));
    if m == 0 || l == 0 {
        return 0;
    }
    let q = m.div_ceil(d);
    let r = q * d - m;
    q * l - l.min(r)
}
