//! Empirical comparison of the three fairness notions on small instances.
//!
//! For every instance and entitlement vector in the grid, each agent gets
//! three thresholds (the largest OMMS requirement, the WMMS and the BMMS).
//! Notion A implies notion B for that agent when every achievable bundle
//! value (a subset sum) that meets A's threshold also meets B's.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::weighted::{bmms_value_with_limits, subset_sums, weighted_maximin_with_limits};
use super::{omms_requirements_with_limits, omms_threshold};
use crate::entitlement::EntitlementVector;
use crate::error::Result;
use crate::instance::{canonicalize, Instance, Value};
use crate::mms::SearchLimits;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    /// Item values for the exhaustive grid of multisets.
    pub values: Vec<u64>,
    /// Grid multisets have 1..=max_items items.
    pub max_items: usize,
    pub agent_counts: Vec<usize>,
    /// Entitlements are `k / denominator`, over all ordered ways of writing
    /// `denominator` as a sum of positive `k`s.
    pub denominator: u64,
    /// Extra random instances on top of the grid.
    pub samples: usize,
    pub sample_max_items: usize,
    pub sample_max_value: u64,
    pub seed: u64,
    pub limits: SearchLimits,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            values: vec![1, 2, 3],
            max_items: 4,
            agent_counts: vec![2, 3],
            denominator: 5,
            samples: 0,
            sample_max_items: 6,
            sample_max_value: 20,
            seed: 0,
            limits: SearchLimits::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Implications {
    pub omms_implies_wmms: bool,
    pub wmms_implies_omms: bool,
    pub bmms_implies_omms: bool,
    pub bmms_implies_wmms: bool,
    pub omms_implies_bmms: bool,
    pub wmms_implies_bmms: bool,
}

impl Implications {
    pub fn wmms_strictly_stronger(&self) -> bool {
        self.wmms_implies_omms && !self.omms_implies_wmms
    }

    pub fn omms_strictly_stronger(&self) -> bool {
        self.omms_implies_wmms && !self.wmms_implies_omms
    }

    pub fn omms_wmms_equivalent(&self) -> bool {
        self.omms_implies_wmms && self.wmms_implies_omms
    }

    pub fn bmms_wmms_equivalent(&self) -> bool {
        self.bmms_implies_wmms && self.wmms_implies_bmms
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgentThresholds {
    pub entitlement: Rational,
    pub omms: Value,
    pub wmms: Rational,
    pub bmms: Rational,
    pub implications: Implications,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub instance: Instance,
    pub entitlements: EntitlementVector,
    pub equal_split: bool,
    pub agents: Vec<AgentThresholds>,
}

/// An agent for which meeting the BMMS does not guarantee another notion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureCounterexample {
    pub row: usize,
    pub agent: usize,
    pub fails_omms: bool,
    pub fails_wmms: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ScanSummary {
    pub rows: usize,
    pub agent_checks: usize,
    /// Instance/entitlement pairs refused by the size limits.
    pub skipped: usize,
    pub wmms_strictly_stronger: usize,
    pub omms_strictly_stronger: usize,
    pub omms_wmms_incomparable: usize,
    pub equal_split_agents: usize,
    pub equal_split_omms_wmms_mismatches: usize,
    pub equal_split_bmms_wmms_mismatches: usize,
    pub bmms_counterexamples: Vec<ConjectureCounterexample>,
    /// Whether meeting the BMMS implied meeting both other notions everywhere.
    pub bmms_conjecture: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub config: ScanConfig,
    pub rows: Vec<ScanRow>,
    pub summary: ScanSummary,
}

/// Whether every achievable value meeting `a` also meets `b`.
fn implies(sums: &[u64], a: &Rational, b: &Rational) -> bool {
    !sums
        .iter()
        .any(|&s| a.cmp_integer(s).is_le() && b.cmp_integer(s).is_gt())
}

pub fn evaluate_row(instance: &Instance, t: &EntitlementVector, limits: &SearchLimits) -> Result<ScanRow> {
    let sums = subset_sums(instance);
    let weighted = weighted_maximin_with_limits(instance, t, limits)?;
    let mut agents = Vec::with_capacity(t.len());
    for (i, ti) in t.as_slice().iter().enumerate() {
        let omms = omms_threshold(&omms_requirements_with_limits(instance, ti, limits)?);
        let wmms = weighted.share(t, i)?;
        let bmms = bmms_value_with_limits(instance, ti, limits)?;
        let o = Rational::from(omms.get());
        let implications = Implications {
            omms_implies_wmms: implies(&sums, &o, &wmms),
            wmms_implies_omms: implies(&sums, &wmms, &o),
            bmms_implies_omms: implies(&sums, &bmms, &o),
            bmms_implies_wmms: implies(&sums, &bmms, &wmms),
            omms_implies_bmms: implies(&sums, &o, &bmms),
            wmms_implies_bmms: implies(&sums, &wmms, &bmms),
        };
        agents.push(AgentThresholds {
            entitlement: ti.clone(),
            omms,
            wmms,
            bmms,
            implications,
        });
    }
    Ok(ScanRow {
        instance: instance.clone(),
        entitlements: t.clone(),
        equal_split: t.is_equal_split(),
        agents,
    })
}

/// Ordered compositions of `total` into `parts` positive integers.
fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    fn rec(left: u64, parts: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 1..=left.saturating_sub(parts as u64 - 1) {
            prefix.push(k);
            rec(left - k, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts >= 1 && total >= parts as u64 {
        rec(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

pub fn entitlement_grid(n: usize, denominator: u64) -> Vec<EntitlementVector> {
    compositions(denominator, n)
        .into_iter()
        .filter_map(|parts| {
            let ts = parts
                .into_iter()
                .map(|k| Rational::from_ratio(k, denominator))
                .collect::<Result<Vec<_>>>()
                .ok()?;
            EntitlementVector::new(ts).ok()
        })
        .collect()
}

/// Non-increasing multisets of 1..=max_items elements drawn from `values`.
fn multiset_grid(values: &[u64], max_items: usize) -> Vec<Vec<u64>> {
    fn rec(values: &[u64], start: usize, left: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..values.len() {
            prefix.push(values[i]);
            rec(values, i, left - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut vals = values.to_vec();
    vals.sort_unstable_by(|a, b| b.cmp(a));
    vals.dedup();
    let mut out = Vec::new();
    rec(&vals, 0, max_items, &mut Vec::new(), &mut out);
    out
}

fn instances(config: &ScanConfig) -> Vec<Instance> {
    let mut seen: BTreeSet<Vec<u64>> = multiset_grid(&config.values, config.max_items).into_iter().collect();
    if config.samples > 0 && config.sample_max_items > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        for _ in 0..config.samples {
            let m = rng.gen_range(1..=config.sample_max_items);
            let mut items: Vec<u64> = (0..m).map(|_| rng.gen_range(0..=config.sample_max_value)).collect();
            items.sort_unstable_by(|a, b| b.cmp(a));
            seen.insert(items);
        }
    }
    seen.into_iter()
        .filter_map(|v| Instance::from_values(v).ok())
        .map(|x| canonicalize(&x))
        .collect()
}

/// Runs the scan; rows are ordered by agent count, then instance, then
/// entitlement vector.
pub fn notion_separation_scan(config: &ScanConfig) -> ScanReport {
    let pool = instances(config);
    let mut keyed = Vec::new();
    let mut skipped = 0;
    for &n in &config.agent_counts {
        let grid = entitlement_grid(n, config.denominator);
        for instance in &pool {
            for t in &grid {
                match evaluate_row(instance, t, &config.limits) {
                    Ok(row) => {
                        let key = (n, instance.values().collect::<Vec<_>>(), t.as_slice().to_vec());
                        keyed.push((key, row));
                    }
                    Err(_) => skipped += 1,
                }
            }
        }
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let rows: Vec<ScanRow> = keyed.into_iter().map(|(_, row)| row).collect();
    let summary = summarize(config, &rows, skipped);
    ScanReport {
        config: config.clone(),
        rows,
        summary,
    }
}

fn summarize(config: &ScanConfig, rows: &[ScanRow], skipped: usize) -> ScanSummary {
    let mut s = ScanSummary {
        rows: rows.len(),
        skipped,
        ..ScanSummary::default()
    };
    for (r, row) in rows.iter().enumerate() {
        for (a, agent) in row.agents.iter().enumerate() {
            let imp = agent.implications;
            s.agent_checks += 1;
            if imp.wmms_strictly_stronger() {
                s.wmms_strictly_stronger += 1;
            } else if imp.omms_strictly_stronger() {
                s.omms_strictly_stronger += 1;
            } else if !imp.omms_implies_wmms && !imp.wmms_implies_omms {
                s.omms_wmms_incomparable += 1;
            }
            if row.equal_split {
                s.equal_split_agents += 1;
                if !imp.omms_wmms_equivalent() {
                    s.equal_split_omms_wmms_mismatches += 1;
                }
                if !imp.bmms_wmms_equivalent() {
                    s.equal_split_bmms_wmms_mismatches += 1;
                }
            }
            if !imp.bmms_implies_omms || !imp.bmms_implies_wmms {
                s.bmms_counterexamples.push(ConjectureCounterexample {
                    row: r,
                    agent: a,
                    fails_omms: !imp.bmms_implies_omms,
                    fails_wmms: !imp.bmms_implies_wmms,
                });
            }
        }
    }
    s.bmms_conjecture = if s.bmms_counterexamples.is_empty() {
        format!(
            "no counterexample found at scale: {} agent checks over {} rows (values {:?}, up to {} items, agents {:?}, denominator {}, {} random samples)",
            s.agent_checks,
            s.rows,
            config.values,
            config.max_items,
            config.agent_counts,
            config.denominator,
            config.samples
        )
    } else {
        format!(
            "counterexample found: {} agent checks where meeting the BMMS does not imply both OMMS and WMMS",
            s.bmms_counterexamples.len()
        )
    };
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_enumerate_ordered_splits() {
        assert_eq!(compositions(5, 2), vec![vec![1, 4], vec![2, 3], vec![3, 2], vec![4, 1]]);
        assert_eq!(compositions(3, 3), vec![vec![1, 1, 1]]);
        assert!(compositions(2, 3).is_empty());
        assert_eq!(entitlement_grid(3, 5).len(), 6);
        assert_eq!(entitlement_grid(1, 7).len(), 1);
    }

    #[test]
    fn multiset_grid_counts() {
        // Multisets of size 1..=2 from 3 values: 3 + 6.
        assert_eq!(multiset_grid(&[1, 2, 3], 2).len(), 9);
        assert!(multiset_grid(&[1, 2], 0).is_empty());
        assert!(multiset_grid(&[2, 1, 2], 1).iter().all(|v| v.len() == 1));
    }

    #[test]
    fn empty_bounds_give_empty_report() {
        let config = ScanConfig {
            max_items: 0,
            samples: 0,
            ..ScanConfig::default()
        };
        let report = notion_separation_scan(&config);
        assert!(report.rows.is_empty());
        assert_eq!(report.summary.agent_checks, 0);
    }

    #[test]
    fn implication_over_subset_sums() {
        let sums = [0, 40, 60, 100];
        let r = |n: u64| Rational::from(n);
        assert!(implies(&sums, &r(60), &r(40)));
        assert!(!implies(&sums, &r(40), &r(60)));
        // 45 and 50 admit the same bundles here.
        assert!(implies(&sums, &r(45), &r(50)) && implies(&sums, &r(50), &r(45)));
    }

    #[test]
    fn seeded_samples_are_reproducible() {
        let config = ScanConfig {
            values: vec![],
            max_items: 0,
            agent_counts: vec![2],
            samples: 8,
            sample_max_items: 4,
            seed: 42,
            ..ScanConfig::default()
        };
        let a = notion_separation_scan(&config);
        let b = notion_separation_scan(&config);
        assert_eq!(a, b);
        assert!(!a.rows.is_empty());
    }
}
