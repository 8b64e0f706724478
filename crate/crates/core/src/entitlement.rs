use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Entitlements `t_1..t_n`, each positive, summing to exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct EntitlementVector(Vec<Rational>);

impl EntitlementVector {
    pub fn new(entitlements: Vec<Rational>) -> Result<Self> {
        if entitlements.is_empty() {
            return Err(Error::InvalidEntitlement("[]".into(), "need at least one agent"));
        }
        if let Some(bad) = entitlements.iter().find(|t| !t.is_positive()) {
            return Err(Error::InvalidEntitlement(bad.to_string(), "must be positive"));
        }
        let total: Rational = entitlements.iter().cloned().sum();
        if total != Rational::one() {
            return Err(Error::InvalidEntitlement(
                format!("sum {total}"),
                "entitlements must sum to 1",
            ));
        }
        Ok(EntitlementVector(entitlements))
    }

    /// `n` agents with `1/n` each.
    pub fn equal(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidEntitlement("[]".into(), "need at least one agent"));
        }
        EntitlementVector::new(vec![Rational::from_ratio(1, n as u64)?; n])
    }

    /// Parses a comma-separated list such as `2/5,3/5` or `0.6,0.2,0.2`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Rational>>>()?;
        EntitlementVector::new(parts)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, agent: usize) -> Option<&Rational> {
        self.0.get(agent)
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_equal_split(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

impl std::fmt::Display for EntitlementVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("(")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str(")")
    }
}

impl<'de> Deserialize<'de> for EntitlementVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Rational>::deserialize(deserializer)?;
        EntitlementVector::new(raw).map_err(serde::de::Error::custom)
    }
}
