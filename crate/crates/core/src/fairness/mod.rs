//! Ordinal (OMMS), weighted (WMMS) and bipartite (BMMS) maximin fairness for
//! agents with unequal entitlements and identical additive valuations.

pub mod scan;
pub mod weighted;

use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use self::weighted::{
    bmms_value, bmms_value_with_limits, subset_sums, weighted_maximin, weighted_maximin_with_limits,
    wmms_value, WeightedMaximin,
};

use crate::entitlement::EntitlementVector;
use crate::error::{Error, Result};
use crate::instance::{Instance, Value};
use crate::mms::{mms_with_limits, SearchLimits};
use crate::pair::Pair;
use crate::pairs::non_dominated_pairs;
use crate::partition::PartitionAssignment;
use crate::rational::Rational;

/// One bundle of item indices per agent; together an exact partition of the
/// instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Allocation {
    bundles: Vec<Vec<usize>>,
}

impl Allocation {
    pub fn new(instance: &Instance, bundles: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; instance.len()];
        for &item in bundles.iter().flatten() {
            let slot = seen.get_mut(item).ok_or_else(|| {
                Error::InvalidAllocation(format!("item {item} out of range 0..{}", instance.len()))
            })?;
            if *slot {
                return Err(Error::InvalidAllocation(format!("item {item} allocated twice")));
            }
            *slot = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidAllocation(format!("item {missing} not allocated")));
        }
        Ok(Allocation { bundles })
    }

    pub fn from_assignment(instance: &Instance, assignment: &PartitionAssignment) -> Result<Self> {
        Allocation::new(instance, assignment.bundles())
    }

    /// Parses bundles of item indices: `0,3;1,2,4`. An empty bundle is an
    /// empty segment, as in `;0;1`.
    pub fn parse(instance: &Instance, text: &str) -> Result<Self> {
        let bundles = text
            .split(';')
            .map(|bundle| {
                bundle
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("not an item index: {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Allocation::new(instance, bundles)
    }

    pub fn bundles(&self) -> &[Vec<usize>] {
        &self.bundles
    }

    pub fn agents(&self) -> usize {
        self.bundles.len()
    }
}

/// Which criteria an audit evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Criteria {
    pub omms: bool,
    pub wmms: bool,
    pub bmms: bool,
}

impl Criteria {
    pub const ALL: Criteria = Criteria {
        omms: true,
        wmms: true,
        bmms: true,
    };
}

impl Default for Criteria {
    fn default() -> Self {
        Criteria::ALL
    }
}

impl FromStr for Criteria {
    type Err = Error;

    /// Comma-separated subset of `omms`, `wmms`, `bmms`.
    fn from_str(s: &str) -> Result<Self> {
        let mut c = Criteria {
            omms: false,
            wmms: false,
            bmms: false,
        };
        for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
            match name.to_ascii_lowercase().as_str() {
                "omms" => c.omms = true,
                "wmms" => c.wmms = true,
                "bmms" => c.bmms = true,
                _ => return Err(Error::Parse(format!("unknown criterion {name:?}"))),
            }
        }
        if !(c.omms || c.wmms || c.bmms) {
            return Err(Error::Parse("no criteria selected".into()));
        }
        Ok(c)
    }
}

/// A non-dominated condition and the value of its maximin share.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmmsRequirement {
    pub pair: Pair,
    pub value: Value,
}

/// The finitely many shares an agent with entitlement `a` must be compared
/// against: one per non-dominated pair for `a` and the instance size. Empty
/// for an empty instance.
pub fn omms_requirements(instance: &Instance, a: &Rational) -> Result<Vec<OmmsRequirement>> {
    omms_requirements_with_limits(instance, a, &SearchLimits::default())
}

pub fn omms_requirements_with_limits(
    instance: &Instance,
    a: &Rational,
    limits: &SearchLimits,
) -> Result<Vec<OmmsRequirement>> {
    if instance.is_empty() {
        crate::rational::rational_floor_mul(a, 1)?;
        return Ok(Vec::new());
    }
    non_dominated_pairs(a, instance.len())?
        .pairs
        .into_iter()
        .map(|pair| {
            let res = mms_with_limits(instance, pair, limits)?;
            Ok(OmmsRequirement {
                pair,
                value: res.value,
            })
        })
        .collect()
}

/// The largest requirement value: a bundle is OMMS-fair iff it reaches it.
pub fn omms_threshold(requirements: &[OmmsRequirement]) -> Value {
    requirements.iter().map(|r| r.value).max().unwrap_or(Value::ZERO)
}

pub fn is_omms_fair(instance: &Instance, a: &Rational, bundle_value: Value) -> Result<bool> {
    let reqs = omms_requirements(instance, a)?;
    Ok(reqs.iter().all(|r| bundle_value >= r.value))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgentReport {
    pub agent: usize,
    pub entitlement: Rational,
    pub bundle: Vec<usize>,
    pub bundle_value: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omms_requirements: Option<Vec<OmmsRequirement>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omms_ok: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wmms_value: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wmms_ok: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bmms_value: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bmms_ok: Option<bool>,
}

impl AgentReport {
    pub fn all_ok(&self) -> bool {
        [self.omms_ok, self.wmms_ok, self.bmms_ok]
            .into_iter()
            .flatten()
            .all(|ok| ok)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FairnessReport {
    pub criteria: Criteria,
    pub agents: Vec<AgentReport>,
    pub all_ok: bool,
}

/// Audits an allocation against all three criteria.
pub fn audit(instance: &Instance, t: &EntitlementVector, alloc: &Allocation) -> Result<FairnessReport> {
    audit_with(instance, t, alloc, Criteria::ALL, &SearchLimits::default())
}

pub fn audit_with(
    instance: &Instance,
    t: &EntitlementVector,
    alloc: &Allocation,
    criteria: Criteria,
    limits: &SearchLimits,
) -> Result<FairnessReport> {
    if alloc.agents() != t.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} bundles for {} entitlements",
            alloc.agents(),
            t.len()
        )));
    }
    // Re-validate: the allocation may come from deserialized input.
    Allocation::new(instance, alloc.bundles.clone())?;

    let weighted = if criteria.wmms {
        Some(weighted_maximin_with_limits(instance, t, limits)?)
    } else {
        None
    };

    let mut agents = Vec::with_capacity(t.len());
    for (agent, (ti, bundle)) in t.as_slice().iter().zip(alloc.bundles()).enumerate() {
        let bundle_value = instance.bundle_value(bundle);
        let mut report = AgentReport {
            agent,
            entitlement: ti.clone(),
            bundle: bundle.clone(),
            bundle_value,
            omms_requirements: None,
            omms_ok: None,
            wmms_value: None,
            wmms_ok: None,
            bmms_value: None,
            bmms_ok: None,
        };
        if criteria.omms {
            let reqs = omms_requirements_with_limits(instance, ti, limits)?;
            report.omms_ok = Some(reqs.iter().all(|r| bundle_value >= r.value));
            report.omms_requirements = Some(reqs);
        }
        if let Some(w) = &weighted {
            let value = w.share(t, agent)?;
            report.wmms_ok = Some(value.cmp_integer(bundle_value.get()).is_le());
            report.wmms_value = Some(value);
        }
        if criteria.bmms {
            let value = bmms_value_with_limits(instance, ti, limits)?;
            report.bmms_ok = Some(value.cmp_integer(bundle_value.get()).is_le());
            report.bmms_value = Some(value);
        }
        agents.push(report);
    }
    let all_ok = agents.iter().all(AgentReport::all_ok);
    Ok(FairnessReport {
        criteria,
        agents,
        all_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(v: &[u64]) -> Instance {
        Instance::from_values(v.iter().copied()).unwrap()
    }

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn p(l: u32, d: u32) -> Pair {
        Pair::new(l, d).unwrap()
    }

    #[test]
    fn omms_requirement_examples() {
        let x = inst(&[1, 3, 5, 6, 9]);
        let reqs = omms_requirements(&x, &r("2/5")).unwrap();
        assert!(reqs.contains(&OmmsRequirement { pair: p(1, 3), value: Value(7) }));

        let y = inst(&[40, 60]);
        assert_eq!(
            omms_requirements(&y, &r("3/5")).unwrap(),
            vec![OmmsRequirement { pair: p(1, 2), value: Value(40) }]
        );
        let low = omms_requirements(&y, &r("2/5")).unwrap();
        assert_eq!(omms_threshold(&low), Value(0));
    }

    #[test]
    fn omms_fairness_examples() {
        let x = inst(&[1, 3, 5, 6, 9]);
        let a = r("2/5");
        assert!(is_omms_fair(&x, &a, Value(7)).unwrap());
        assert!(!is_omms_fair(&x, &a, Value(4)).unwrap());
        assert!(is_omms_fair(&x, &a, x.total()).unwrap());
        assert!(is_omms_fair(&inst(&[]), &a, Value(0)).unwrap());
        assert!(is_omms_fair(&x, &r("0"), Value(0)).is_err());
    }

    #[test]
    fn allocation_validation() {
        let x = inst(&[1, 2, 3]);
        assert!(Allocation::parse(&x, "0,2;1").is_ok());
        assert!(Allocation::parse(&x, ";0,1,2").is_ok());
        assert!(Allocation::parse(&x, "0,1;1,2").is_err());
        assert!(Allocation::parse(&x, "0;1").is_err());
        assert!(Allocation::parse(&x, "0;1;5,2").is_err());
        assert!(Allocation::parse(&x, "0;a").is_err());
    }

    #[test]
    fn criteria_parsing() {
        let c: Criteria = "omms, WMMS".parse().unwrap();
        assert!(c.omms && c.wmms && !c.bmms);
        assert!("".parse::<Criteria>().is_err());
        assert!("emms".parse::<Criteria>().is_err());
    }

    #[test]
    fn audit_introduction_allocation() {
        // {1,6} to the 40% agent, {3,5,9} to the 60% agent.
        let x = inst(&[1, 3, 5, 6, 9]);
        let t = EntitlementVector::parse("0.4,0.6").unwrap();
        let alloc = Allocation::parse(&x, "0,3;1,2,4").unwrap();
        let rep = audit(&x, &t, &alloc).unwrap();
        assert_eq!(rep.agents[0].bundle_value, Value(7));
        assert_eq!(rep.agents[0].omms_ok, Some(true));
        assert_eq!(rep.agents[1].omms_ok, Some(true));
    }

    #[test]
    fn audit_separating_allocation() {
        let x = inst(&[40, 60]);
        let t = EntitlementVector::parse("3/5,1/5,1/5").unwrap();
        let alloc = Allocation::parse(&x, ";0;1").unwrap();
        let rep = audit(&x, &t, &alloc).unwrap();
        assert!(rep.agents.iter().all(|a| a.wmms_ok == Some(true)));
        assert_eq!(rep.agents[0].omms_ok, Some(false));
        assert!(!rep.all_ok);
    }

    #[test]
    fn audit_all_three_pass() {
        let x = inst(&[40, 60]);
        let t = EntitlementVector::parse("2/5,3/5").unwrap();
        let alloc = Allocation::parse(&x, "0;1").unwrap();
        let rep = audit(&x, &t, &alloc).unwrap();
        assert!(rep.all_ok);
        assert_eq!(rep.agents[0].wmms_value, Some(r("40")));
        assert_eq!(rep.agents[1].bmms_value, Some(r("60")));
    }

    #[test]
    fn audit_single_agent() {
        let x = inst(&[5, 1, 4]);
        let t = EntitlementVector::parse("1").unwrap();
        let alloc = Allocation::parse(&x, "0,1,2").unwrap();
        assert!(audit(&x, &t, &alloc).unwrap().all_ok);
    }

    #[test]
    fn audit_criteria_subset_and_mismatch() {
        let x = inst(&[40, 60]);
        let t = EntitlementVector::parse("3/5,1/5,1/5").unwrap();
        let alloc = Allocation::parse(&x, ";0;1").unwrap();
        let only_wmms = Criteria { omms: false, wmms: true, bmms: false };
        let rep = audit_with(&x, &t, &alloc, only_wmms, &SearchLimits::default()).unwrap();
        assert!(rep.all_ok);
        assert!(rep.agents[0].omms_ok.is_none() && rep.agents[0].bmms_value.is_none());

        let two = EntitlementVector::parse("1/2,1/2").unwrap();
        assert!(matches!(audit(&x, &two, &alloc), Err(Error::DimensionMismatch(_))));
    }
}
