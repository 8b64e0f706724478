//! Weighted (WMMS) and bipartite (BMMS) maximin shares.
//!
//! WMMS: the best achievable `min_j V(Y_j) / t_j` over partitions into one
//! labelled part per agent, scaled back by `t_i`. The search works on integer
//! weights `w_j = t_j * L` (`L` the common denominator), compares ratios by
//! cross-multiplication in `u128` and only breaks symmetry between agents
//! whose entitlements are equal.
//!
//! BMMS: the same with two parts, agent `i` against everyone else. It is
//! computed from the set of reachable subset sums rather than by search.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::entitlement::EntitlementVector;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::mms::SearchLimits;
use crate::partition::PartitionAssignment;
use crate::rational::Rational;

/// Optimum of `max over partitions of min_j V(Y_j) / t_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedMaximin {
    pub level: Rational,
    /// A partition attaining `level`; part `j` goes to agent `j`.
    pub witness: PartitionAssignment,
}

impl WeightedMaximin {
    /// The WMMS of `agent`: `t_agent * level`.
    pub fn share(&self, t: &EntitlementVector, agent: usize) -> Result<Rational> {
        let ti = t.get(agent).ok_or_else(|| {
            Error::DimensionMismatch(format!("agent {agent} out of range for {} agents", t.len()))
        })?;
        Ok(ti * &self.level)
    }
}

pub fn weighted_maximin(instance: &Instance, t: &EntitlementVector) -> Result<WeightedMaximin> {
    weighted_maximin_with_limits(instance, t, &SearchLimits::default())
}

pub fn weighted_maximin_with_limits(
    instance: &Instance,
    t: &EntitlementVector,
    limits: &SearchLimits,
) -> Result<WeightedMaximin> {
    let n = t.len();
    let m = instance.len();
    let (weights, scale) = integer_weights(t)?;

    if n == 1 {
        // One agent takes everything.
        return Ok(WeightedMaximin {
            level: Rational::from(instance.total().get()),
            witness: PartitionAssignment::new(vec![0; m], 1)?,
        });
    }
    if m == 0 {
        return Ok(WeightedMaximin {
            level: Rational::zero(),
            witness: PartitionAssignment::new(Vec::new(), n)?,
        });
    }
    limits.check(m, n)?;

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| instance.items()[b].cmp(&instance.items()[a]).then(a.cmp(&b)));
    let items: Vec<u64> = order.iter().map(|&i| instance.items()[i].0).collect();

    let mut search = WeightedSearch::new(&items, &weights);
    search.run();

    let mut part_of = vec![0; m];
    for (pos, &orig) in order.iter().enumerate() {
        part_of[orig] = search.best_assignment[pos];
    }
    // level = V / t_j = V * L / w_j
    let Ratio { value, weight } = search.best;
    let level = Rational::from_ratio(BigInt::from(value) * &scale, BigInt::from(weight))?;
    Ok(WeightedMaximin {
        level,
        witness: PartitionAssignment::new(part_of, n)?,
    })
}

/// WMMS of one agent.
pub fn wmms_value(instance: &Instance, t: &EntitlementVector, agent: usize) -> Result<Rational> {
    weighted_maximin(instance, t)?.share(t, agent)
}

/// BMMS for entitlement `ti`: `ti * max over (X, Y) of min(V(X)/ti, V(Y)/(1-ti))`.
///
/// For `ti = 1` the other side has no claim and the value is the total.
pub fn bmms_value(instance: &Instance, ti: &Rational) -> Result<Rational> {
    bmms_value_with_limits(instance, ti, &SearchLimits::default())
}

pub fn bmms_value_with_limits(instance: &Instance, ti: &Rational, limits: &SearchLimits) -> Result<Rational> {
    if !ti.is_positive() || *ti > Rational::one() {
        return Err(Error::InvalidEntitlement(ti.to_string(), "must satisfy 0 < t <= 1"));
    }
    let total = instance.total().get();
    if *ti == Rational::one() {
        return Ok(Rational::from(total));
    }
    limits.check(instance.len(), 2)?;

    // t * min(s/t, (T-s)/(1-t)) = min(s, (T-s) * t/(1-t)); the first term
    // rises and the second falls in s, crossing at s = t*T, so the optimum is
    // at the reachable sum just below or just above t*T.
    let ratio = ti / &(Rational::one() - ti.clone());
    let objective = |s: u64| {
        let own = Rational::from(s);
        let rest = Rational::from(total - s) * ratio.clone();
        own.min(rest)
    };
    let sums = subset_sums(instance);
    let target = ti * &Rational::from(total);
    let above = sums.partition_point(|&s| s.cmp_rational(&target) == Ordering::Less);
    let mut best = Rational::zero();
    for idx in [above.checked_sub(1), Some(above)].into_iter().flatten() {
        if let Some(&s) = sums.get(idx) {
            best = best.max(objective(s));
        }
    }
    Ok(best)
}

/// Sorted distinct sums of all subsets of the instance.
pub fn subset_sums(instance: &Instance) -> Vec<u64> {
    let mut sums = vec![0u64];
    for v in instance.values() {
        let shifted: Vec<u64> = sums.iter().map(|s| s + v).collect();
        let mut merged = Vec::with_capacity(sums.len() * 2);
        let (mut i, mut j) = (0, 0);
        while i < sums.len() || j < shifted.len() {
            let next = match (sums.get(i), shifted.get(j)) {
                (Some(&a), Some(&b)) if a <= b => {
                    i += 1;
                    if a == b {
                        j += 1;
                    }
                    a
                }
                (Some(_), Some(&b)) | (None, Some(&b)) => {
                    j += 1;
                    b
                }
                (Some(&a), None) => {
                    i += 1;
                    a
                }
                (None, None) => unreachable!(),
            };
            merged.push(next);
        }
        sums = merged;
    }
    sums
}

trait CmpRational {
    fn cmp_rational(&self, r: &Rational) -> Ordering;
}

impl CmpRational for u64 {
    fn cmp_rational(&self, r: &Rational) -> Ordering {
        r.cmp_integer(*self).reverse()
    }
}

/// `t_j = w_j / scale` with integer `w_j`; the weights sum to `scale`.
fn integer_weights(t: &EntitlementVector) -> Result<(Vec<u64>, BigInt)> {
    let scale = t
        .as_slice()
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    if scale.to_u64().is_none() {
        return Err(Error::InvalidEntitlement(
            t.to_string(),
            "common denominator exceeds 64 bits",
        ));
    }
    let weights = t
        .as_slice()
        .iter()
        .map(|x| (x.numer() * &scale / x.denom()).to_u64().expect("w_j <= scale"))
        .collect();
    Ok((weights, scale))
}

/// `value / weight`, compared exactly.
#[derive(Debug, Clone, Copy)]
struct Ratio {
    value: u64,
    weight: u64,
}

impl Ratio {
    fn cmp(self, other: Ratio) -> Ordering {
        (self.value as u128 * other.weight as u128).cmp(&(other.value as u128 * self.weight as u128))
    }
}

struct WeightedSearch<'a> {
    items: &'a [u64],
    weights: &'a [u64],
    suffix: Vec<u64>,
    /// Parts grouped by equal weight, each group in index order.
    group_of: Vec<usize>,
    groups: Vec<Vec<usize>>,
    opened: Vec<usize>,
    sums: Vec<u64>,
    current: Vec<usize>,
    order_scratch: Vec<usize>,
    best: Ratio,
    best_assignment: Vec<usize>,
    ceiling: Ratio,
}

impl<'a> WeightedSearch<'a> {
    fn new(items: &'a [u64], weights: &'a [u64]) -> Self {
        let n = weights.len();
        let m = items.len();
        let mut suffix = vec![0u64; m + 1];
        for i in (0..m).rev() {
            suffix[i] = suffix[i + 1] + items[i];
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut group_of = vec![0; n];
        for j in 0..n {
            match groups.iter().position(|g| weights[g[0]] == weights[j]) {
                Some(g) => {
                    groups[g].push(j);
                    group_of[j] = g;
                }
                None => {
                    group_of[j] = groups.len();
                    groups.push(vec![j]);
                }
            }
        }
        let total_weight: u64 = weights.iter().sum();
        let mut search = WeightedSearch {
            items,
            weights,
            suffix,
            group_of,
            opened: vec![0; groups.len()],
            groups,
            sums: vec![0; n],
            current: vec![0; m],
            order_scratch: (0..n).collect(),
            best: Ratio { value: 0, weight: 1 },
            best_assignment: vec![0; m],
            ceiling: Ratio {
                value: items.iter().sum(),
                weight: total_weight,
            },
        };
        search.seed_greedy();
        search
    }

    fn objective(&self) -> Ratio {
        (0..self.weights.len())
            .map(|j| Ratio {
                value: self.sums[j],
                weight: self.weights[j],
            })
            .min_by(|a, b| a.cmp(*b))
            .expect("at least one part")
    }

    /// Incumbent from giving each item to the agent furthest below its
    /// entitlement.
    fn seed_greedy(&mut self) {
        for i in 0..self.items.len() {
            let j = (0..self.weights.len())
                .min_by(|&a, &b| {
                    Ratio { value: self.sums[a], weight: self.weights[a] }
                        .cmp(Ratio { value: self.sums[b], weight: self.weights[b] })
                        .then(a.cmp(&b))
                })
                .expect("at least one part");
            self.sums[j] += self.items[i];
            self.best_assignment[i] = j;
        }
        self.best = self.objective();
        self.sums.iter_mut().for_each(|s| *s = 0);
    }

    fn run(&mut self) {
        if self.best.cmp(self.ceiling) != Ordering::Less {
            return;
        }
        self.descend(0);
    }

    /// Water-filling bound: for the parts sorted by current ratio, any prefix
    /// `J` caps the final minimum at `(sum_J V + remaining) / sum_J w`.
    fn upper_bound(&mut self, remaining: u64) -> Ratio {
        let (sums, weights) = (&self.sums, self.weights);
        self.order_scratch.sort_unstable_by(|&a, &b| {
            Ratio { value: sums[a], weight: weights[a] }.cmp(Ratio { value: sums[b], weight: weights[b] })
        });
        let mut value = remaining;
        let mut weight = 0u64;
        let mut bound = self.ceiling;
        for &j in &self.order_scratch {
            value += self.sums[j];
            weight += self.weights[j];
            let candidate = Ratio { value, weight };
            if candidate.cmp(bound) == Ordering::Less {
                bound = candidate;
            }
        }
        bound
    }

    fn descend(&mut self, i: usize) {
        if i == self.items.len() {
            let value = self.objective();
            if value.cmp(self.best) == Ordering::Greater {
                self.best = value;
                self.best_assignment.copy_from_slice(&self.current);
            }
            return;
        }
        if self.upper_bound(self.suffix[i]).cmp(self.best) != Ordering::Greater {
            return;
        }
        let item = self.items[i];
        let min_part = if i > 0 && self.items[i - 1] == item {
            self.current[i - 1]
        } else {
            0
        };
        for j in min_part..self.weights.len() {
            let g = self.group_of[j];
            let rank = self.groups[g].iter().position(|&x| x == j).expect("member");
            // Within a group of equal weights, parts open in index order.
            if rank > self.opened[g] {
                continue;
            }
            let opens = rank == self.opened[g];
            if opens {
                self.opened[g] += 1;
            }
            self.sums[j] += item;
            self.current[i] = j;
            self.descend(i + 1);
            self.sums[j] -= item;
            if opens {
                self.opened[g] -= 1;
            }
            if self.best.cmp(self.ceiling) != Ordering::Less {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(v: &[u64]) -> Instance {
        Instance::from_values(v.iter().copied()).unwrap()
    }

    fn ent(s: &str) -> EntitlementVector {
        EntitlementVector::parse(s).unwrap()
    }

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn wmms_examples() {
        let x = inst(&[40, 60]);
        let t = ent("2/5,3/5");
        assert_eq!(wmms_value(&x, &t, 0).unwrap(), r("40"));
        assert_eq!(wmms_value(&x, &t, 1).unwrap(), r("60"));
        let t3 = ent("3/5,1/5,1/5");
        for i in 0..3 {
            assert_eq!(wmms_value(&x, &t3, i).unwrap(), r("0"));
        }
    }

    #[test]
    fn wmms_witness_attains_level() {
        let x = inst(&[7, 3, 3, 2, 9, 1]);
        let t = ent("1/6,1/3,1/2");
        let res = weighted_maximin(&x, &t).unwrap();
        let sums = res.witness.part_sums(&x).unwrap();
        let attained = sums
            .iter()
            .zip(t.as_slice())
            .map(|(v, tj)| Rational::from(v.get()) / tj.clone())
            .min()
            .unwrap();
        assert_eq!(attained, res.level);
    }

    #[test]
    fn single_agent_and_empty() {
        let x = inst(&[4, 5]);
        assert_eq!(wmms_value(&x, &ent("1"), 0).unwrap(), r("9"));
        assert_eq!(wmms_value(&inst(&[]), &ent("1/2,1/2"), 1).unwrap(), r("0"));
        assert!(wmms_value(&x, &ent("1/2,1/2"), 2).is_err());
    }

    #[test]
    fn bmms_examples() {
        let x = inst(&[40, 60]);
        assert_eq!(bmms_value(&x, &r("2/5")).unwrap(), r("40"));
        assert_eq!(bmms_value(&x, &r("3/5")).unwrap(), r("60"));
        assert_eq!(bmms_value(&inst(&[]), &r("1/3")).unwrap(), r("0"));
        assert_eq!(bmms_value(&x, &r("1")).unwrap(), r("100"));
        assert!(bmms_value(&x, &r("0")).is_err());
        assert!(bmms_value(&x, &r("4/3")).is_err());
    }

    #[test]
    fn bmms_can_exceed_equal_split_mms() {
        // With three equal entitlements the bipartite split {2,2} | {3,3,2}
        // gives 4, while the best 3-way partition only guarantees 3.
        let x = inst(&[3, 3, 2, 2, 2]);
        assert_eq!(bmms_value(&x, &r("1/3")).unwrap(), r("4"));
        assert_eq!(wmms_value(&x, &EntitlementVector::equal(3).unwrap(), 0).unwrap(), r("3"));
    }

    #[test]
    fn subset_sums_distinct_sorted() {
        assert_eq!(subset_sums(&inst(&[1, 2, 3])), vec![0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(subset_sums(&inst(&[])), vec![0]);
        assert_eq!(subset_sums(&inst(&[5, 5])), vec![0, 5, 10]);
    }

    #[test]
    fn too_fine_entitlements_are_refused() {
        let big = (1u128 << 40) as u64;
        let t = EntitlementVector::new(vec![
            Rational::from_ratio(1, big - 1).unwrap(),
            Rational::from_ratio(1, big + 1).unwrap(),
            Rational::one()
                - Rational::from_ratio(1, big - 1).unwrap()
                - Rational::from_ratio(1, big + 1).unwrap(),
        ])
        .unwrap();
        assert!(matches!(weighted_maximin(&inst(&[1, 2]), &t), Err(Error::InvalidEntitlement(..))));
    }
}
